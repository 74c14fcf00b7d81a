#include "peerreview/reviewer_game.hpp"

#include <algorithm>

namespace peerreview::reviewer {

double shirk_surplus(double gamma, double p_det, const Calibration& cal) {
  return cal.R + cal.psi_alpha * gamma * (1.0 - p_det) - cal.ell * p_det;
}

double gamma1(double p_det, const Calibration& cal) {
  return (-cal.R + cal.ell * p_det) / (cal.psi_alpha * (1.0 - p_det));
}

namespace {

double work_shirk_threshold(double gamma, double p_det, const Calibration& cal) {
  return cal.reviewer_cost_inverse(cal.psi_alpha * (1.0 - gamma * (1.0 - p_det)) +
                                   cal.ell * p_det);
}

}  // namespace

ReviewerEquilibrium participation(double gamma, double p_det, const Calibration& cal) {
  const auto types = cal.reviewer_types();
  ReviewerEquilibrium eq;
  eq.S = shirk_surplus(gamma, p_det, cal);
  eq.gamma1 = gamma1(p_det, cal);
  eq.t0 = cal.reviewer_cost_inverse(cal.R + cal.psi_alpha);
  eq.t_tilde = work_shirk_threshold(gamma, p_det, cal);
  if (eq.S < 0.0) {
    // shirking is dominated by declining; only types above t0 accept, all work
    eq.regime = Regime::pre_transition;
    eq.m = 1.0;
    eq.mu = 1.0 - types.cdf(eq.t0);
  } else {
    eq.regime = Regime::post_transition;
    eq.mu = 1.0;
    eq.m = 1.0 - types.cdf(eq.t_tilde);
  }
  return eq;
}

double post_transition_effort(const Calibration& cal) {
  const double t = work_shirk_threshold(gamma1(0.0, cal), 0.0, cal);
  return 1.0 - cal.reviewer_types().cdf(t);
}

double effort_rate(double gamma, const Calibration& cal) {
  return participation(gamma, 0.0, cal).m;
}

}  // namespace peerreview::reviewer
