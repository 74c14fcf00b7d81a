#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "peerreview/author_game.hpp"
#include "peerreview/editor_objective.hpp"
#include "peerreview/errors.hpp"
#include "peerreview/reform_solver.hpp"
#include "peerreview/reviewer_game.hpp"

using namespace peerreview;

namespace {

struct ThreadEnv {
  explicit ThreadEnv(const char* v) { setenv(kThreadsEnv_, v, 1); }
  ~ThreadEnv() { unsetenv(kThreadsEnv_); }
  static constexpr const char* kThreadsEnv_ = "PEERREVIEW_THREADS";
};

}  // namespace

TEST_CASE("reservation equals status-quo author welfare") {
  const auto c = baseline_calibration();
  const double m = reviewer::effort_rate(0.4, c);
  const auto eq = author::equilibrium_polish(m, c.K0, 0.0, 2.0, c);
  CHECK(reform::author_reservation(0.4, c) == doctest::Approx(eq.U_A).epsilon(1e-14));
  CHECK(reform::author_reservation_at_effort(m, 2, c) == doctest::Approx(eq.U_A).epsilon(1e-14));
}

TEST_CASE("reform flips sign across the transition") {
  const auto c = baseline_calibration();
  const auto pre = reform::solve_reform(0.2, c);
  CHECK(pre.K_star < c.K0);
  CHECK(pre.p_det_star == 0.0);
  const auto post = reform::solve_reform(0.4, c);
  CHECK(post.K_star > c.K0);
  CHECK(post.p_det_star > 0.0);
  CHECK(post.binding);
  CHECK(post.lambda > 0.0);
  CHECK(post.m == doctest::Approx(reviewer::effort_rate(0.4, c)).epsilon(1e-14));
  CHECK(post.m < 0.125);
}

TEST_CASE("solution is feasible and weakly improves on the status quo") {
  const auto c = baseline_calibration();
  for (double g : {0.0, 0.1, 0.3, 0.33, 0.5, 0.7, 0.9, 0.98}) {
    const auto s = reform::solve_reform(g, c);
    CHECK(s.U_A_star >= s.U_A_bar - 1e-12);
    CHECK(s.U_E_star >= s.U_E_decentralized - 1e-12);
    CHECK(s.lambda >= 0.0);
    CHECK(s.K_star >= c.solver.K_min);
    CHECK(s.K_star <= c.solver.K_max);
    CHECK(s.p_det_star >= 0.0);
    CHECK(s.p_det_star <= c.solver.p_max);
    const auto w = editor::editor_welfare({s.grid_meta.panel_size, s.K_star, s.p_det_star}, s.m, c);
    CHECK(w.U_E == doctest::Approx(s.U_E_star).epsilon(1e-12));
  }
}

TEST_CASE("binding flag matches the slack") {
  const auto c = baseline_calibration();
  for (double g : {0.1, 0.5}) {
    const auto s = reform::solve_reform(g, c);
    CHECK(s.binding == (s.U_A_star - s.U_A_bar <= 1e-8));
  }
}

TEST_CASE("low publication value keeps the status quo") {
  auto c = baseline_calibration();
  c.V = 0.6;
  const auto s = reform::solve_reform(0.2, c);
  CHECK(s.K_star == doctest::Approx(c.K0).epsilon(1e-9));
}

TEST_CASE("result does not depend on the worker count") {
  const auto c = baseline_calibration();
  reform::ReformSolution a, b;
  {
    ThreadEnv e("1");
    a = reform::solve_reform(0.45, c);
  }
  {
    ThreadEnv e("7");
    b = reform::solve_reform(0.45, c);
  }
  CHECK(a.K_star == b.K_star);
  CHECK(a.p_det_star == b.p_det_star);
  CHECK(a.U_E_star == b.U_E_star);
  CHECK(a.lambda == b.lambda);
}

TEST_CASE("infeasible floor") {
  const auto c = baseline_calibration();
  CHECK_THROWS_AS(reform::solve_reform_at_effort(0.125, 2, c, 10.0), Infeasible);
}

TEST_CASE("premises at baseline") {
  const auto c = baseline_calibration();
  const auto r = reform::premise_report(c);
  CHECK(r.p1.holds);
  CHECK(r.p2.holds);
  CHECK(r.p3.holds);
  CHECK(r.p4.holds);
  CHECK(r.m1 == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(r.m_bar == doctest::Approx(std::min(1.0, std::sqrt(c.V / (r.rho_bar * std::abs(r.psi_1 - c.V)))))
                       .epsilon(1e-12));
  CHECK(r.p1.rhs > r.p1.lhs);
  CHECK(r.net_sorting_benefit == doctest::Approx(r.composition_gain + r.sample_size_loss).epsilon(1e-12));
  CHECK(r.composition_gain > 0.0);
  CHECK(r.sample_size_loss < 0.0);
  CHECK(r.rho_bar_exact > 1.0);
  CHECK(r.rho_bar_gaussian > 1.0);
}

TEST_CASE("score ratio is one at full effort") {
  const auto c = baseline_calibration();
  for (auto mode : {DensityMode::gaussian_approx, DensityMode::exact_convolution}) {
    CHECK(reform::score_ratio(1.0, 0.3, 2.0, c, mode) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("restoration") {
  const auto c = baseline_calibration();
  const auto r = reform::restoration_scan(c, 6);
  CHECK(r.gap > 0.0);
  CHECK(r.gap == doctest::Approx(r.pre_U_E - r.best_post_U_E).epsilon(1e-14));
  const auto full = reform::restoration_scan(c, 6, 1.0);
  CHECK(std::abs(full.gap) <= 1e-12);
}

TEST_CASE("restoration gap grows with reviewer noise") {
  double prev = -1.0;
  for (double s : {0.33, 0.45, 0.6, 0.75}) {
    auto c = baseline_calibration();
    c.sigma_s = s;
    const auto r = reform::restoration_scan(c, 4);
    CHECK(r.gap > prev);
    prev = r.gap;
  }
}
