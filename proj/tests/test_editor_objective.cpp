#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "peerreview/author_game.hpp"
#include "peerreview/editor_objective.hpp"
#include "peerreview/reviewer_game.hpp"

using namespace peerreview;

namespace {

double gaussian_Q(double M, double N_ret, double K, const Calibration& c) {
  const double st = std::sqrt(1.0 / 12.0);
  const double rho = M * st / std::sqrt(M * M * st * st + c.noise_variance(M) / N_ret);
  return 0.5 + rho * st * oracle::pdf(oracle::quantile(1.0 - K)) / K;
}

}  // namespace

TEST_CASE("sorting quality, gaussian path") {
  const auto c = baseline_calibration();
  CHECK(editor::sorting_quality(0.0, 2.0, 0.3, c) == 0.5);
  CHECK(editor::sorting_quality(1.0, 2.0, 0.3, c) == doctest::Approx(0.769602).epsilon(1e-6));
  for (double M : {0.1, 0.5, 0.9}) {
    for (double n : {1.0, 2.5, 20.0}) {
      for (double K : {0.05, 0.3, 0.7}) {
        CHECK(editor::sorting_quality(M, n, K, c) == doctest::Approx(gaussian_Q(M, n, K, c)).epsilon(1e-12));
      }
    }
  }
  const double limit = 0.5 + std::sqrt(1.0 / 12.0) * oracle::pdf(oracle::quantile(0.7)) / 0.3;
  CHECK(editor::sorting_quality(1.0, 1e9, 0.3, c) == doctest::Approx(limit).epsilon(1e-8));
}

TEST_CASE("sorting quality, exact path") {
  const auto c = baseline_calibration();
  const auto e = DensityMode::exact_convolution;
  CHECK(editor::sorting_quality(1.0, 2.0, 0.3, c, e) == doctest::Approx(0.785496).epsilon(1e-6));
  CHECK(editor::sorting_quality(0.125, 2.0, 0.3, c, e) == doctest::Approx(0.543634).epsilon(1e-6));
  CHECK(editor::sorting_quality(0.5, 1.0, 0.3, c, e) == doctest::Approx(0.628978).epsilon(1e-6));
  CHECK(editor::sorting_quality(1.0, 20.0, 0.3, c, e) == doctest::Approx(0.842500).epsilon(1e-6));
  for (double M : {0.2, 0.7}) {
    for (double K : {0.1, 0.5}) {
      const double sig = std::sqrt(c.noise_variance(M) / 3.0);
      CHECK(editor::sorting_quality(M, 3.0, K, c, e) ==
            doctest::Approx(oracle::exact_sorting_quality(M, sig, K)).epsilon(1e-8));
    }
  }
  // full information limit of the uniform law
  CHECK(editor::sorting_quality(1.0, 1e8, 0.3, c, e) == doctest::Approx(0.85).epsilon(1e-4));
  CHECK(editor::sorting_quality(0.0, 2.0, 0.3, c, e) == 0.5);
}

TEST_CASE("exact-path quality stays inside the support") {
  const auto c = baseline_calibration();
  for (double M : {0.05, 0.5, 1.0}) {
    for (double K : {0.02, 0.3, 0.9}) {
      const double q = editor::sorting_quality(M, 50.0, K, c, DensityMode::exact_convolution);
      CHECK(q >= 0.5);
      CHECK(q <= 1.0);
    }
  }
}

TEST_CASE("sorting quality comparative statics") {
  const auto c = baseline_calibration();
  for (auto mode : {DensityMode::gaussian_approx, DensityMode::exact_convolution}) {
    double prev = 2.0;
    for (int i = 0; i < 20; ++i) {
      const double K = 0.04 + 0.9 * i / 19.0;
      const double q = editor::sorting_quality(0.5, 2.0, K, c, mode);
      CHECK(q < prev);
      prev = q;
    }
    prev = -1.0;
    for (int i = 1; i <= 20; ++i) {
      const double q = editor::sorting_quality(i / 20.0, 2.0, 0.3, c, mode);
      CHECK(q > prev);
      prev = q;
    }
    double q0 = editor::sorting_quality(0.5, 1.0, 0.3, c, mode);
    double q1 = editor::sorting_quality(0.5, 2.0, 0.3, c, mode);
    for (int n = 3; n <= 20; ++n) {
      const double q2 = editor::sorting_quality(0.5, n, 0.3, c, mode);
      CHECK(q2 > q1);
      CHECK(q2 - q1 < q1 - q0);
      q0 = q1;
      q1 = q2;
    }
  }
}

TEST_CASE("editor welfare") {
  const auto c = baseline_calibration();
  const auto a = editor::editor_welfare({2, 0.3, 0.0}, 1.0, c);
  CHECK(a.U_E == doctest::Approx(0.769602 - 0.04).epsilon(1e-6));
  const auto b = editor::editor_welfare({2, 0.3, 0.0}, 0.0, c);
  CHECK(b.U_E == doctest::Approx(0.46).epsilon(1e-14));
  const auto d = editor::editor_welfare({2, 0.3, 0.5}, 0.125, c);
  CHECK(d.M == doctest::Approx(0.125 / 0.5625).epsilon(1e-14));
  CHECK(d.N_ret == doctest::Approx(1.125).epsilon(1e-14));
  CHECK(d.U_E == doctest::Approx(editor::sorting_quality(d.M, 1.125, 0.3, c) - 0.04 - 0.01).epsilon(1e-14));
}

TEST_CASE("decentralized panel size") {
  const auto c = baseline_calibration();
  for (int i = 0; i < 16; ++i) CHECK(editor::decentralized_N(0.02 * i, c) == 2);
  CHECK(editor::decentralized_N(0.999, c) == 1);
  CHECK(editor::decentralized_N_at_effort(0.125, c) == 1);
  CHECK(editor::reform_panel_size(c) == 2);
  auto z = c;
  z.epsilon = 0.0;
  CHECK(editor::decentralized_N(0.1, z, 20) == 20);
  CHECK(editor::decentralized_N(0.1, z, 7) == 7);

  // welfare by panel size at full effort
  CHECK(editor::editor_welfare({1, 0.3, 0.0}, 1.0, c).U_E == doctest::Approx(0.71198).epsilon(1e-5));
  CHECK(editor::editor_welfare({2, 0.3, 0.0}, 1.0, c).U_E == doctest::Approx(0.72960).epsilon(1e-5));
  CHECK(editor::editor_welfare({3, 0.3, 0.0}, 1.0, c).U_E == doctest::Approx(0.72689).epsilon(1e-5));
}

TEST_CASE("welfare misalignment at the transition") {
  const auto c = baseline_calibration();
  const auto m = editor::misalignment_at_transition(c);
  CHECK(m.dU_A > 0.0);
  CHECK(m.dU_E < 0.0);
  const auto hi = author::equilibrium_polish(m.m_before, 0.3, 0.0, 2.0, c);
  const auto lo = author::equilibrium_polish(m.m_after, 0.3, 0.0, 2.0, c);
  CHECK(std::abs(m.dU_A - (hi.dissipation - lo.dissipation)) <= 1e-9);
}
