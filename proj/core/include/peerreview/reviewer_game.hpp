#pragma once

#include "peerreview/calibration.hpp"

namespace peerreview::reviewer {

enum class Regime { pre_transition, post_transition };

/// Outcome of the reviewers' decline / shirk / work choice.
struct ReviewerEquilibrium {
  Regime regime = Regime::pre_transition;
  double mu = 0.0;       ///< pool mass (share of invitations accepted)
  double m = 1.0;        ///< effort rate among accepting reviewers
  double t0 = 0.0;       ///< work / decline threshold type
  double t_tilde = 0.0;  ///< work / shirk threshold type
  double gamma1 = 0.0;   ///< capability at which shirking becomes weakly profitable
  double S = 0.0;        ///< shirk surplus over declining
};

/// Payoff of accepting and shirking relative to declining:
/// R + psi_alpha * gamma * (1 - p_det) - ell * p_det.
double shirk_surplus(double gamma, double p_det, const Calibration& cal);

/// Capability threshold (-R + ell p_det) / (psi_alpha (1 - p_det)). May exceed
/// one, meaning shirking never pays at that detection level.
double gamma1(double p_det, const Calibration& cal);

/// Reviewer equilibrium at AI capability `gamma`. S == 0 counts as
/// post-transition.
ReviewerEquilibrium participation(double gamma, double p_det, const Calibration& cal);

/// Effort rate on the post-transition branch evaluated at gamma1(0), i.e.
/// the level m drops to at the participation threshold.
double post_transition_effort(const Calibration& cal);

/// Convenience: participation(gamma, 0, cal).m
double effort_rate(double gamma, const Calibration& cal);

}  // namespace peerreview::reviewer
