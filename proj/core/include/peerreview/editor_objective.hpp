#pragma once

#include "peerreview/calibration.hpp"

namespace peerreview::editor {

/// Editorial policy: panel size, acceptance rate, detection intensity.
struct Policy {
  int N = 2;
  double K = 0.3;
  double p_det = 0.0;

  bool operator==(const Policy&) const = default;
};

struct EditorOutcome {
  double Q = 0.0;    ///< E[theta | accepted]
  double U_E = 0.0;  ///< Q - epsilon N - D(p_det)
  int N_star = 0;    ///< decentralized panel size when known, else 0
  Policy policy;
  double M = 1.0;
  double N_ret = 0.0;
};

/// Expected quality of the accepted top-K fraction.
///
/// gaussian_approx: joint-normal inverse-Mills form
///   Q = mu + rho sigma_theta phi(q) / K,  q = Phi^{-1}(1-K),
///   rho = M sigma_theta / sqrt(M^2 sigma_theta^2 + Sigma^2(M)/N_ret).
/// exact_convolution: (1/K) * integral theta f(theta) P(signal > z | theta),
///   with z the exact (1-K) quantile.
double sorting_quality(double M, double N_ret, double K, const Calibration& cal);
double sorting_quality(double M, double N_ret, double K, const Calibration& cal,
                       DensityMode mode);

/// Editor payoff for a policy given reviewer effort m: quality is computed on
/// the retained panel, invitation cost on the full panel.
EditorOutcome editor_welfare(const Policy& policy, double m, const Calibration& cal);

/// argmax_{N in 1..N_max} Q(N, K0, m(gamma)) - epsilon N with p_det = 0;
/// ties go to the smaller N.
int decentralized_N(double gamma, const Calibration& cal, int N_max = 20);

/// Same search for an explicit effort rate.
int decentralized_N_at_effort(double m, const Calibration& cal, int N_max = 20);

/// Editor outcome at the decentralized policy (N*(gamma), K0, 0).
EditorOutcome decentralized_outcome(double gamma, const Calibration& cal, int N_max = 20);

/// Panel size the reform problem holds fixed: the decentralized choice just
/// below the participation threshold.
int reform_panel_size(const Calibration& cal);

struct Misalignment {
  double dU_A = 0.0;   ///< author welfare jump across the threshold
  double dU_E = 0.0;   ///< decentralized editor welfare jump
  double U_A_before = 0.0;
  double U_A_after = 0.0;
  double U_E_before = 0.0;
  double U_E_after = 0.0;
  double m_before = 1.0;
  double m_after = 1.0;
  int N_before = 0;
  int N_after = 0;
};

/// Evaluates author welfare (at the reform panel size, K0, no detection) and
/// max_N editor welfare at gamma1 -/+ 1e-6.
Misalignment misalignment_at_transition(const Calibration& cal);

}  // namespace peerreview::editor
