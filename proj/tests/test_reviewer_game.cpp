#include <cmath>

#include "doctest.h"
#include "peerreview/reviewer_game.hpp"

using namespace peerreview;
using reviewer::Regime;

TEST_CASE("shirk surplus") {
  const auto c = baseline_calibration();
  CHECK(reviewer::shirk_surplus(0.32, 0.0, c) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(reviewer::shirk_surplus(0.0, 0.0, c) == -0.08);
  CHECK(reviewer::shirk_surplus(1.0, 0.5, c) == doctest::Approx(0.02).epsilon(1e-14));
}

TEST_CASE("transition capability") {
  auto c = baseline_calibration();
  CHECK(reviewer::gamma1(0.0, c) == doctest::Approx(0.32).epsilon(1e-14));
  CHECK(reviewer::gamma1(0.5, c) == doctest::Approx(0.84).epsilon(1e-14));
  c.R = -0.15;
  CHECK(reviewer::gamma1(0.0, c) == doctest::Approx(0.60).epsilon(1e-14));
}

TEST_CASE("participation regimes") {
  const auto c = baseline_calibration();
  const auto post = reviewer::participation(0.32 + 1e-9, 0.0, c);
  CHECK(post.regime == Regime::post_transition);
  CHECK(post.m == doctest::Approx(0.125).epsilon(1e-8));
  CHECK(post.mu == 1.0);

  const auto pre = reviewer::participation(0.20, 0.0, c);
  CHECK(pre.regime == Regime::pre_transition);
  CHECK(pre.m == 1.0);
  CHECK(pre.t0 == doctest::Approx(0.875).epsilon(1e-14));
  CHECK(pre.mu == doctest::Approx(0.125).epsilon(1e-14));

  const auto top = reviewer::participation(1.0, 0.0, c);
  CHECK(top.m == 0.0);
  CHECK(top.mu == 1.0);

  // S = 0 exactly counts as post-transition
  auto e = c;
  e.R = -0.25 * 0.5;
  CHECK(reviewer::participation(0.5, 0.0, e).regime == Regime::post_transition);
}

TEST_CASE("post-transition effort is the calibration target") {
  const auto c = calibrate_reviewer_cost(baseline_calibration(), 0.125);
  CHECK(reviewer::post_transition_effort(c) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(std::abs(reviewer::effort_rate(reviewer::gamma1(0.0, c) + 1e-12, c) - 0.125) < 1e-9);
}

TEST_CASE("jumps across the threshold") {
  const auto c = baseline_calibration();
  const double g1 = reviewer::gamma1(0.0, c);
  const auto lo = reviewer::participation(g1 - 1e-9, 0.0, c);
  const auto hi = reviewer::participation(g1 + 1e-9, 0.0, c);
  CHECK(hi.mu - lo.mu == doctest::Approx(0.875).epsilon(1e-7));  // G(t0)
  CHECK(lo.m - hi.m == doctest::Approx(0.875).epsilon(1e-7));    // G(t_tilde(gamma1))
}

TEST_CASE("effort is nonincreasing after the transition") {
  const auto c = baseline_calibration();
  double prev = 2.0;
  for (int i = 0; i <= 40; ++i) {
    const double g = 0.32 + (1.0 - 0.32) * i / 40.0;
    const double m = reviewer::effort_rate(g, c);
    CHECK(m <= prev);
    prev = m;
  }
}

TEST_CASE("surplus sign and regime agree") {
  const auto c = baseline_calibration();
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 9; ++j) {
      const double g = i / 20.0;
      const double p = j / 10.0;
      const bool post = reviewer::shirk_surplus(g, p, c) >= 0.0;
      CHECK((reviewer::participation(g, p, c).regime == Regime::post_transition) == post);
    }
  }
}

TEST_CASE("ties have measure zero") {
  const auto c = baseline_calibration();
  for (double g : {0.05, 0.2, 0.31, 0.33, 0.5, 0.77, 0.95}) {
    const auto a = reviewer::participation(g, 0.0, c);
    for (double d : {-1e-12, 1e-12}) {
      const auto b = reviewer::participation(g + d, 0.0, c);
      CHECK(std::abs(a.mu - b.mu) <= 1e-12);
      CHECK(std::abs(a.m - b.m) <= 1e-12);
    }
  }
}
