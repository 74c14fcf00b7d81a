#pragma once

#include <string>
#include <vector>

#include "peerreview/distribution.hpp"

namespace peerreview {

/// Evaluation path for threshold densities and sorting quality.
enum class DensityMode {
  gaussian_approx,    ///< moment-matched normal for M*theta + noise
  exact_convolution,  ///< exact law of M*theta + noise (closed form for uniform F)
};

std::string to_string(DensityMode mode);
DensityMode density_mode_from_string(const std::string& name);

/// Reviewer effort cost c_R(t) = c0 * (1 - t)^exponent, strictly decreasing.
/// exponent == 1 is the linear default and gets a closed-form inverse.
struct ReviewerCostSpec {
  double c0 = 1.36;
  double exponent = 1.0;

  bool is_linear() const { return exponent == 1.0; }
  bool operator==(const ReviewerCostSpec&) const = default;
};

/// Author polish cost c_A(a) = kappa * a^eta / eta (eta = 2 is the quadratic
/// default kappa*a^2/2).
struct PolishCostSpec {
  double eta = 2.0;

  bool is_quadratic() const { return eta == 2.0; }
  bool operator==(const PolishCostSpec&) const = default;
};

/// Detection cost D(p) = d0 * p^2 / (1 - p).
struct DetectionCostSpec {
  double d0 = 0.02;

  bool operator==(const DetectionCostSpec&) const = default;
};

/// Which density evaluates the score ratio rho(m) in the sharpness bound.
enum class ScoreRatioMode { exact_convolution, gaussian_approx };

/// Grid and finite-difference settings shared by the policy solvers.
struct SolverSettings {
  double K_min = 0.02;
  double K_max = 0.98;
  double K_step = 0.01;
  double p_max = 0.95;
  double p_step = 0.01;
  int N_max = 20;
  double lambda_delta = 1e-4;   ///< IR-level perturbation for the shadow price
  double fd_rel_step = 1e-4;    ///< relative central-difference step
  int m_grid_points = 50;       ///< score-ratio grid over [m_grid_min, 1]
  double m_grid_min = 0.02;
  ScoreRatioMode score_ratio_mode = ScoreRatioMode::exact_convolution;

  bool operator==(const SolverSettings&) const = default;
};

/// All model primitives. Construct one with baseline_calibration(), adjust
/// fields, then pass it through validate() before handing it to a solver.
struct Calibration {
  double V = 1.0;            ///< publication value
  double beta = 0.5;         ///< weight of polish in effortful reports
  double kappa = 0.3;        ///< polish cost scale
  double psi_alpha = 0.25;   ///< appearance reward
  double R = -0.08;          ///< baseline payoff of accepting an invitation
  double ell = 0.05;         ///< penalty on a detected shirking report
  double sigma_e = 0.3;      ///< noise s.d. of an effortful report
  double sigma_s = 0.4;      ///< noise s.d. of a shirking report
  double epsilon = 0.02;     ///< invitation cost per reviewer
  int N = 2;                 ///< reviewers per paper
  double K0 = 0.3;           ///< baseline acceptance rate

  DistributionSpec F_spec = DistributionSpec::uniform();  ///< paper quality
  DistributionSpec G_spec = DistributionSpec::uniform();  ///< reviewer type
  ReviewerCostSpec cR_spec;
  PolishCostSpec cA_spec;
  DetectionCostSpec D_spec;
  DensityMode density_mode = DensityMode::gaussian_approx;
  SolverSettings solver;

  // Functional forms.
  double reviewer_cost(double t) const;
  /// c_R^{-1}(x), clamped to 0 above c_R(0) and to 1 below c_R(1).
  double reviewer_cost_inverse(double x) const;
  double polish_cost(double a) const;
  double polish_marginal_cost(double a) const;
  double polish_cost_curvature(double a) const;
  double detection_cost(double p) const;
  double detection_marginal_cost(double p) const;
  double noise_variance(double effort_share) const;  ///< Sigma^2(M)

  Distribution quality() const { return Distribution(F_spec); }
  Distribution reviewer_types() const { return Distribution(G_spec); }

  bool operator==(const Calibration&) const = default;
};

/// The baseline calibration (reviewer cost scale already calibrated so the
/// post-transition effort rate is 0.125).
Calibration baseline_calibration();

/// Returns `raw` unchanged if every model assumption holds, otherwise throws
/// AssumptionViolation listing each failed condition.
Calibration validate(const Calibration& raw);

/// Names of the violated assumptions (empty when `raw` is valid).
std::vector<std::string> assumption_failures(const Calibration& raw);

/// Sets c0 so the effort rate just past the participation threshold equals
/// `target_m1`. Requires uniform G on [0,1] and linear c_R; the solution is
/// c0 = (psi_alpha + R) / target_m1. Throws Infeasible when the result would
/// break c_R(1) < R + psi_alpha < c_R(0).
Calibration calibrate_reviewer_cost(const Calibration& cal, double target_m1);

}  // namespace peerreview
