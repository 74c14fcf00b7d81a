#include "peerreview/reform_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "peerreview/author_game.hpp"
#include "peerreview/editor_objective.hpp"
#include "peerreview/errors.hpp"
#include "peerreview/numerics.hpp"
#include "peerreview/parallel.hpp"
#include "peerreview/reviewer_game.hpp"
#include "peerreview/signal_model.hpp"

namespace peerreview::reform {

namespace {

constexpr double kFeasibilityTol = 1e-12;
constexpr double kBindingTol = 1e-8;
constexpr double kSnapTol = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// K grid K_min, K_min + step, ..., K_max with K0 included exactly.
std::vector<double> acceptance_grid(const SolverSettings& s, double K0, double K_from) {
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double k = s.K_min + i * s.K_step;
    if (k > s.K_max + kSnapTol) break;
    if (k < K_from - kSnapTol) continue;
    out.push_back(std::abs(k - K0) < kSnapTol ? K0 : k);
  }
  if (K0 >= s.K_min && K0 <= s.K_max && K0 >= K_from - kSnapTol) {
    auto it = std::lower_bound(out.begin(), out.end(), K0);
    if (it == out.end() || *it != K0) out.insert(it, K0);
  }
  return out;
}

std::vector<double> detection_grid(const SolverSettings& s) {
  std::vector<double> out;
  for (int j = 0;; ++j) {
    const double p = j * s.p_step;
    if (p > s.p_max + kSnapTol) break;
    out.push_back(std::min(p, s.p_max));
  }
  return out;
}

/// Author and editor payoffs at fixed effort and panel size.
struct Payoffs {
  double m;
  int N;
  const Calibration& cal;

  double author(double K, double p) const {
    return author::equilibrium_polish(m, K, p, static_cast<double>(N), cal).U_A;
  }
  double editor(double K, double p) const {
    return editor::editor_welfare(editor::Policy{N, K, p}, m, cal).U_E;
  }
};

struct Cell {
  double U_A = 0.0;
  double U_E = 0.0;
  bool feasible = false;
};

struct Point {
  double K = 0.0;
  double p = 0.0;
  double U_E = kNegInf;
};

/// Smallest feasible K for this p: scan the grid, then bisect between the
/// last infeasible and first feasible grid values. U_E is strictly
/// decreasing in K, so this is the best K for the given p.
std::optional<double> smallest_feasible_K(const Payoffs& f, double p, double floor,
                                          const std::vector<double>& Ks) {
  for (std::size_t i = 0; i < Ks.size(); ++i) {
    if (f.author(Ks[i], p) >= floor - kFeasibilityTol) {
      if (i == 0) return Ks[0];
      double lo = Ks[i - 1];
      double hi = Ks[i];
      for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f.author(mid, p) >= floor - kFeasibilityTol) hi = mid;
        else lo = mid;
      }
      return hi;
    }
  }
  return std::nullopt;
}

Point boundary_point(const Payoffs& f, double p, double floor, const std::vector<double>& Ks) {
  const auto K = smallest_feasible_K(f, p, floor, Ks);
  if (!K) return Point{0.0, p, kNegInf};
  return Point{*K, p, f.editor(*K, p)};
}

struct CoreSolution {
  Point best;
  Point grid_best;
  int feasible_cells = 0;
  bool refined = false;
};

CoreSolution solve_core(const Payoffs& f, double floor, const std::vector<double>& Ks,
                        const std::vector<double>& Ps, const SolverSettings& s) {
  std::vector<std::vector<Cell>> cells(Ks.size(), std::vector<Cell>(Ps.size()));
  parallel_for(Ks.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < Ps.size(); ++j) {
      auto& c = cells[i][j];
      c.U_A = f.author(Ks[i], Ps[j]);
      c.feasible = c.U_A >= floor - kFeasibilityTol;
      c.U_E = c.feasible ? f.editor(Ks[i], Ps[j]) : kNegInf;
    }
  });

  CoreSolution out;
  for (std::size_t i = 0; i < Ks.size(); ++i) {
    for (std::size_t j = 0; j < Ps.size(); ++j) {
      const auto& c = cells[i][j];
      if (!c.feasible) continue;
      ++out.feasible_cells;
      if (c.U_E > out.grid_best.U_E) out.grid_best = Point{Ks[i], Ps[j], c.U_E};
    }
  }
  if (out.feasible_cells == 0) return out;
  out.best = out.grid_best;

  // refinement along the author-welfare floor: profile it on the p grid,
  // then golden-section around the best profile point
  Point edge;
  for (double p : Ps) {
    const auto c = boundary_point(f, p, floor, Ks);
    if (c.U_E > edge.U_E) edge = c;
  }
  std::vector<Point> candidates{edge};
  const double p_lo = std::max(0.0, edge.p - s.p_step);
  const double p_hi = std::min(s.p_max, edge.p + s.p_step);
  if (edge.U_E > kNegInf && p_hi > p_lo) {
    const auto g = numerics::golden_max(
        [&](double p) { return boundary_point(f, p, floor, Ks).U_E; }, p_lo, p_hi, 1e-10);
    candidates.push_back(boundary_point(f, g.x, floor, Ks));
  }
  for (const auto& c : candidates) {
    if (c.U_E > out.best.U_E) {
      out.best = c;
      out.refined = true;
    }
  }
  return out;
}

}  // namespace

double author_reservation_at_effort(double m, int panel_size, const Calibration& cal) {
  return author::equilibrium_polish(m, cal.K0, 0.0, static_cast<double>(panel_size), cal).U_A;
}

double author_reservation(double gamma, const Calibration& cal) {
  return author_reservation_at_effort(reviewer::effort_rate(gamma, cal),
                                      editor::reform_panel_size(cal), cal);
}

ReformSolution solve_reform_at_effort(double m, int panel_size, const Calibration& cal,
                                      std::optional<double> floor_override, bool estimate_lambda) {
  const auto& s = cal.solver;
  const Payoffs f{m, panel_size, cal};
  const double floor = floor_override.value_or(author_reservation_at_effort(m, panel_size, cal));
  const auto Ks = acceptance_grid(s, cal.K0, s.K_min);
  const auto Ps = detection_grid(s);

  const auto core = solve_core(f, floor, Ks, Ps, s);
  if (core.feasible_cells == 0) {
    throw Infeasible("reform: no grid point satisfies the author-welfare floor");
  }
  if (!floor_override && f.author(cal.K0, 0.0) < floor - kFeasibilityTol) {
    throw Infeasible("reform: decentralized policy violates its own welfare floor");
  }

  ReformSolution out;
  out.m = m;
  out.K_star = core.best.K;
  out.p_det_star = core.best.p;
  out.U_E_star = core.best.U_E;
  out.U_A_star = f.author(out.K_star, out.p_det_star);
  out.U_A_bar = floor;
  out.binding = out.U_A_star - floor <= kBindingTol;
  out.U_E_decentralized = f.editor(cal.K0, 0.0);
  out.grid_meta = GridMeta{static_cast<int>(Ks.size()),
                           static_cast<int>(Ps.size()),
                           s.K_min,
                           s.K_max,
                           s.K_step,
                           s.p_max,
                           s.p_step,
                           core.feasible_cells,
                           core.refined,
                           panel_size};

  if (estimate_lambda) {
    const double delta = s.lambda_delta;
    try {
      const auto tighter = solve_reform_at_effort(m, panel_size, cal, floor + delta, false);
      out.lambda = std::max(0.0, (out.U_E_star - tighter.U_E_star) / delta);
    } catch (const Infeasible&) {
      out.lambda = std::numeric_limits<double>::infinity();
    }

    const double h = s.fd_rel_step;
    const double dUE_dK = numerics::central_difference(
        [&](double K) { return f.editor(K, out.p_det_star); }, out.K_star, h);
    const double dUA_dK = numerics::central_difference(
        [&](double K) { return f.author(K, out.p_det_star); }, out.K_star, h);
    const double dUE_dp = numerics::central_difference(
        [&](double p) { return f.editor(out.K_star, p); }, out.p_det_star, h);
    const double dUA_dp = numerics::central_difference(
        [&](double p) { return f.author(out.K_star, p); }, out.p_det_star, h);
    if (std::isfinite(out.lambda)) {
      out.foc_residual_K = dUE_dK + out.lambda * dUA_dK;
      out.foc_residual_p = dUE_dp + out.lambda * dUA_dp;
    }
  }
  return out;
}

ReformSolution solve_reform(double gamma, const Calibration& cal) {
  const double m = reviewer::effort_rate(gamma, cal);
  auto out = solve_reform_at_effort(m, editor::reform_panel_size(cal), cal);
  out.gamma = gamma;
  return out;
}

double score_ratio(double m, double K, double panel_size, const Calibration& cal,
                   DensityMode mode) {
  auto slope = [&](double effort) {
    const auto model = signal::retained_model(effort, 0.0, panel_size, cal);
    return std::abs(signal::threshold_and_density(model.M, model.sigma_eff, K, cal, mode).h_prime);
  };
  return slope(m) / slope(1.0);
}

PremiseReport premise_report(const Calibration& cal) {
  const auto& s = cal.solver;
  PremiseReport r;
  r.panel_size = editor::reform_panel_size(cal);
  const double N = static_cast<double>(r.panel_size);
  r.m1 = reviewer::post_transition_effort(cal);

  // (i) rat-race sensitivity before the transition
  {
    const auto eq = author::equilibrium_polish(1.0, cal.K0, 0.0, N, cal);
    const auto d = author::polish_sensitivities(1.0, cal.K0, 0.0, N, cal);
    const double rhs = cal.polish_marginal_cost(eq.a_star) * d.dA_dK;
    r.p1 = PremiseCheck{cal.V < rhs, cal.V, rhs};
    r.psi_1 = cal.V - rhs;
  }

  // (ii) detection intensifies the rat race after the transition
  const auto eq1 = author::equilibrium_polish(r.m1, cal.K0, 0.0, N, cal);
  const auto d1 = author::polish_sensitivities(r.m1, cal.K0, 0.0, N, cal);
  r.p2 = PremiseCheck{d1.dA_dp > 0.0, d1.dA_dp, 0.0};
  r.psi_m1 = cal.V - cal.polish_marginal_cost(eq1.a_star) * d1.dA_dK;

  // (iii) sharpness: m1 <= m_bar
  double best_exact = 0.0, at_exact = 0.0, best_gauss = 0.0, at_gauss = 0.0;
  for (int i = 0; i < s.m_grid_points; ++i) {
    const double m = s.m_grid_min + i * (1.0 - s.m_grid_min) / (s.m_grid_points - 1);
    const double re = score_ratio(m, cal.K0, N, cal, DensityMode::exact_convolution);
    const double rg = score_ratio(m, cal.K0, N, cal, DensityMode::gaussian_approx);
    if (re > best_exact) { best_exact = re; at_exact = m; }
    if (rg > best_gauss) { best_gauss = rg; at_gauss = m; }
  }
  r.rho_bar_exact = best_exact;
  r.rho_bar_gaussian = best_gauss;
  const bool exact = s.score_ratio_mode == ScoreRatioMode::exact_convolution;
  r.rho_bar = exact ? best_exact : best_gauss;
  r.rho_bar_at_m = exact ? at_exact : at_gauss;
  r.m_bar = std::min(1.0, std::sqrt(cal.V / (r.rho_bar * std::abs(r.psi_1 - cal.V))));
  r.p3 = PremiseCheck{r.m1 <= r.m_bar, r.m1, r.m_bar};

  // (iv) net sorting benefit of detection vs. compensation cost at p_det = 0
  {
    const double m = r.m1;
    const double N_ret = N;  // no detection
    const double h = s.fd_rel_step;
    const double dQ_dM = numerics::central_difference(
        [&](double M) { return editor::sorting_quality(M, N_ret, cal.K0, cal); }, m, h);
    const double dQ_dN = numerics::central_difference(
        [&](double n) { return editor::sorting_quality(m, n, cal.K0, cal); }, N_ret, h);
    const double dM_dp = m * (1.0 - m);
    const double dN_dp = -N * (1.0 - m);
    r.composition_gain = dQ_dM * dM_dp;
    r.sample_size_loss = dQ_dN * dN_dp;
    r.net_sorting_benefit = r.composition_gain + r.sample_size_loss;
    r.lambda_used = solve_reform_at_effort(m, r.panel_size, cal).lambda;
    r.compensation_cost = r.lambda_used * cal.polish_marginal_cost(eq1.a_star) * d1.dA_dp;
    r.p4 = PremiseCheck{r.net_sorting_benefit > r.compensation_cost, r.net_sorting_benefit,
                        r.compensation_cost};
  }
  return r;
}

RestorationResult restoration_scan(const Calibration& cal, int N_max,
                                   std::optional<double> m_override) {
  const auto& s = cal.solver;
  RestorationResult out;
  out.m = m_override.value_or(reviewer::post_transition_effort(cal));
  const int panel = editor::reform_panel_size(cal);
  const double floor = author_reservation_at_effort(out.m, panel, cal);

  out.pre_U_E = kNegInf;
  for (int n = 1; n <= N_max; ++n) {
    const double u = editor::sorting_quality(1.0, n, cal.K0, cal) - cal.epsilon * n;
    if (u > out.pre_U_E) {
      out.pre_U_E = u;
      out.pre_N = n;
    }
  }

  // feasible post-transition policies never tighten below K0
  const auto Ks = acceptance_grid(s, cal.K0, cal.K0);
  const auto Ps = detection_grid(s);
  std::vector<Point> per_N(static_cast<std::size_t>(N_max));
  parallel_for(per_N.size(), [&](std::size_t idx) {
    const Payoffs f{out.m, static_cast<int>(idx) + 1, cal};
    Point best;
    for (double K : Ks) {
      for (double p : Ps) {
        if (f.author(K, p) < floor - kFeasibilityTol) continue;
        const double u = f.editor(K, p);
        if (u > best.U_E) best = Point{K, p, u};
      }
    }
    per_N[idx] = best;
  });

  out.best_post_U_E = kNegInf;
  for (std::size_t idx = 0; idx < per_N.size(); ++idx) {
    if (per_N[idx].U_E > out.best_post_U_E) {
      out.best_post_U_E = per_N[idx].U_E;
      out.best_N = static_cast<int>(idx) + 1;
      out.best_K = per_N[idx].K;
      out.best_p_det = per_N[idx].p;
    }
  }
  out.gap = out.pre_U_E - out.best_post_U_E;
  return out;
}

}  // namespace peerreview::reform
