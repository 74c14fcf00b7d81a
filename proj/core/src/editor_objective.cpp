#include "peerreview/editor_objective.hpp"

#include <cmath>
#include <limits>

#include "peerreview/author_game.hpp"
#include "peerreview/numerics.hpp"
#include "peerreview/reviewer_game.hpp"
#include "peerreview/signal_model.hpp"

namespace peerreview::editor {

namespace nm = numerics;

double sorting_quality(double M, double N_ret, double K, const Calibration& cal,
                       DensityMode mode) {
  const auto quality = cal.quality();
  const double noise_var = cal.noise_variance(M) / N_ret;
  if (M <= 0.0) return quality.mean();

  if (mode == DensityMode::gaussian_approx) {
    const double sd_theta = std::sqrt(quality.variance());
    const double sd_signal = std::sqrt(M * M * quality.variance() + noise_var);
    const double rho = M * sd_theta / sd_signal;
    const double q = nm::normal_quantile(1.0 - K);
    return quality.mean() + rho * sd_theta * nm::normal_pdf(q) / K;
  }

  const double sigma = std::sqrt(noise_var);
  const signal::ExactSignalLaw law(quality, M, sigma);
  const double z = law.quantile(1.0 - K);
  auto pass = [&](double t) { return 1.0 - nm::normal_cdf((z - M * t) / sigma); };
  const double mass =
      nm::integrate([&](double t) { return quality.pdf(t) * pass(t); }, quality.lower(), quality.upper());
  const double first =
      nm::integrate([&](double t) { return t * quality.pdf(t) * pass(t); }, quality.lower(), quality.upper());
  return first / mass;
}

double sorting_quality(double M, double N_ret, double K, const Calibration& cal) {
  return sorting_quality(M, N_ret, K, cal, cal.density_mode);
}

EditorOutcome editor_welfare(const Policy& policy, double m, const Calibration& cal) {
  const auto model = signal::retained_model(m, policy.p_det, static_cast<double>(policy.N), cal);
  EditorOutcome out;
  out.policy = policy;
  out.M = model.M;
  out.N_ret = model.N_ret;
  out.Q = sorting_quality(model.M, model.N_ret, policy.K, cal);
  out.U_E = out.Q - cal.epsilon * policy.N - cal.detection_cost(policy.p_det);
  return out;
}

int decentralized_N_at_effort(double m, const Calibration& cal, int N_max) {
  int best_N = 1;
  double best = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= N_max; ++n) {
    const double u = sorting_quality(m, static_cast<double>(n), cal.K0, cal) - cal.epsilon * n;
    if (u > best) {
      best = u;
      best_N = n;
    }
  }
  return best_N;
}

int decentralized_N(double gamma, const Calibration& cal, int N_max) {
  return decentralized_N_at_effort(reviewer::effort_rate(gamma, cal), cal, N_max);
}

EditorOutcome decentralized_outcome(double gamma, const Calibration& cal, int N_max) {
  const double m = reviewer::effort_rate(gamma, cal);
  const int n = decentralized_N_at_effort(m, cal, N_max);
  auto out = editor_welfare(Policy{n, cal.K0, 0.0}, m, cal);
  out.N_star = n;
  return out;
}

int reform_panel_size(const Calibration& cal) {
  // below the threshold every accepting reviewer works
  return decentralized_N_at_effort(1.0, cal, cal.solver.N_max);
}

Misalignment misalignment_at_transition(const Calibration& cal) {
  constexpr double kOffset = 1e-6;
  const double g1 = reviewer::gamma1(0.0, cal);
  const int panel = reform_panel_size(cal);

  Misalignment out;
  out.m_before = reviewer::effort_rate(g1 - kOffset, cal);
  out.m_after = reviewer::effort_rate(g1 + kOffset, cal);
  out.U_A_before = author::equilibrium_polish(out.m_before, cal.K0, 0.0, panel, cal).U_A;
  out.U_A_after = author::equilibrium_polish(out.m_after, cal.K0, 0.0, panel, cal).U_A;

  const auto before = decentralized_outcome(g1 - kOffset, cal, cal.solver.N_max);
  const auto after = decentralized_outcome(g1 + kOffset, cal, cal.solver.N_max);
  out.U_E_before = before.U_E;
  out.U_E_after = after.U_E;
  out.N_before = before.N_star;
  out.N_after = after.N_star;
  out.dU_A = out.U_A_after - out.U_A_before;
  out.dU_E = out.U_E_after - out.U_E_before;
  return out;
}

}  // namespace peerreview::editor
