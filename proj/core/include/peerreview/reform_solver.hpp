#pragma once

#include <optional>

#include "peerreview/calibration.hpp"

namespace peerreview::reform {

struct GridMeta {
  int K_points = 0;
  int p_points = 0;
  double K_min = 0.0, K_max = 0.0, K_step = 0.0;
  double p_max = 0.0, p_step = 0.0;
  int feasible_cells = 0;
  bool refined = false;   ///< refinement improved on the grid argmax
  int panel_size = 0;     ///< N held fixed during the solve
};

/// Constrained editorial optimum over (K, p_det).
struct ReformSolution {
  double K_star = 0.0;
  double p_det_star = 0.0;
  double lambda = 0.0;     ///< shadow price of the author-welfare floor
  double U_E_star = 0.0;
  double U_A_star = 0.0;
  double U_A_bar = 0.0;    ///< author-welfare floor
  bool binding = false;
  double U_E_decentralized = 0.0;  ///< U_E at (K0, 0), same panel
  double m = 1.0;          ///< reviewer effort the solve used
  double gamma = 0.0;
  /// Lagrangian stationarity residuals at the optimum (diagnostic only).
  double foc_residual_K = 0.0;
  double foc_residual_p = 0.0;
  GridMeta grid_meta;
};

/// Author-welfare floor: K0 V - c_A(a*(m(gamma), K0, 0)) at the reform panel size.
double author_reservation(double gamma, const Calibration& cal);
double author_reservation_at_effort(double m, int panel_size, const Calibration& cal);

/// Maximises U_E over the (K, p_det) grid subject to U_A >= floor, then
/// refines: for each p_det the best K is the smallest feasible one (U_E is
/// strictly decreasing in K), found by bisection on the floor. That boundary
/// is profiled on the p_det grid and polished by golden-section search. The shadow
/// price is the finite difference of the optimum in the floor level.
ReformSolution solve_reform(double gamma, const Calibration& cal);

/// Lower-level entry: explicit effort rate, panel size and (optionally) floor.
ReformSolution solve_reform_at_effort(double m, int panel_size, const Calibration& cal,
                                      std::optional<double> floor = std::nullopt,
                                      bool estimate_lambda = true);

struct PremiseCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PremiseReport {
  /// (i) V < c_A'(a*) da*/dK at m = 1: lhs = V, rhs = c_A'(a*) da*/dK.
  PremiseCheck p1;
  /// (ii) da*/dp_det > 0 at m1: lhs = da*/dp_det, rhs = 0.
  PremiseCheck p2;
  /// (iii) m1 <= m_bar: lhs = m1, rhs = m_bar.
  PremiseCheck p3;
  /// (iv) net sorting benefit > lambda c_A'(a*) da*/dp_det at (m1, p_det = 0).
  PremiseCheck p4;
  double composition_gain = 0.0;   ///< dQ/dM * dM/dp
  double sample_size_loss = 0.0;   ///< dQ/dN_ret * dN_ret/dp (negative)
  double net_sorting_benefit = 0.0;
  double compensation_cost = 0.0;
  double lambda_used = 0.0;

  double psi_1 = 0.0;               ///< V - c_A'(a*) da*/dK at m = 1
  double psi_m1 = 0.0;              ///< same at m1
  double rho_bar = 0.0;             ///< max score ratio (mode per solver settings)
  double rho_bar_at_m = 0.0;
  double rho_bar_exact = 0.0;
  double rho_bar_gaussian = 0.0;
  double m_bar = 0.0;               ///< min(1, sqrt(V / (rho_bar |psi_1 - V|)))
  double m1 = 0.0;
  int panel_size = 0;
};

/// Score ratio |h'_m(z(m,K))| / |h'_1(z(1,K))| at the given panel size.
double score_ratio(double m, double K, double panel_size, const Calibration& cal,
                   DensityMode mode);

PremiseReport premise_report(const Calibration& cal);

struct RestorationResult {
  double best_post_U_E = 0.0;
  double pre_U_E = 0.0;
  double gap = 0.0;
  int best_N = 0;
  double best_K = 0.0;
  double best_p_det = 0.0;
  int pre_N = 0;
  double m = 0.0;
};

/// Best IR-feasible U_E over N in 1..N_max and the (K, p_det) grid at the
/// post-transition effort (or `m_override`), against the pre-AI benchmark
/// max_N [Q(N, K0, 1) - epsilon N].
RestorationResult restoration_scan(const Calibration& cal, int N_max,
                                   std::optional<double> m_override = std::nullopt);

}  // namespace peerreview::reform
