#include <cmath>

#include "doctest.h"
#include "peerreview/author_game.hpp"
#include "peerreview/editor_objective.hpp"
#include "peerreview/mc_validator.hpp"

using namespace peerreview;

namespace {

mc::SimConfig small(std::uint64_t seed = 7) {
  mc::SimConfig s;
  s.papers = 20000;
  s.replicates = 6;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("summary statistics") {
  const auto e = mc::summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(e.mean == 2.5);
  CHECK(e.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)).epsilon(1e-14));
  CHECK(e.replicates == 4);
  CHECK(e.covers(2.5));
  CHECK(!e.covers(100.0));
  CHECK(e.within_se(2.5 + 2.0 * e.se, 3.0));
  CHECK(!e.within_se(2.5 + 4.0 * e.se, 3.0));
  CHECK(e.ci_half_width(0.99) > e.ci_half_width(0.95));
}

TEST_CASE("same seed gives identical results, thread count does not matter") {
  const auto c = baseline_calibration();
  auto s1 = small();
  s1.threads = 1;
  auto s4 = small();
  s4.threads = 4;
  const editor::Policy pol{2, 0.3, 0.2};
  const auto a = mc::simulate(pol, 0.5, 0.4, c, s1, {0.1});
  const auto b = mc::simulate(pol, 0.5, 0.4, c, s4, {0.1});
  CHECK(a.Q_hat.mean == b.Q_hat.mean);
  CHECK(a.Q_hat.se == b.Q_hat.se);
  CHECK(a.accept_rate_by_polish.at(0.1).mean == b.accept_rate_by_polish.at(0.1).mean);
  const auto d = mc::simulate(pol, 0.5, 0.4, c, small(8));
  CHECK(d.Q_hat.mean != a.Q_hat.mean);
}

TEST_CASE("no effort means random sorting") {
  const auto c = baseline_calibration();
  const auto r = mc::simulate({2, 0.3, 0.0}, 0.0, 0.0, c, small());
  CHECK(std::abs(r.Q_hat.mean - 0.5) < 4.0 * r.Q_hat.se + 1e-3);
}

TEST_CASE("detection thins the panel") {
  const auto c = baseline_calibration();
  auto s = small();
  s.stochastic_composition = true;
  const auto r = mc::simulate({2, 0.3, 0.5}, 0.125, 0.0, c, s);
  const double expected = 2.0 * (0.125 + 0.875 * 0.5);
  CHECK(std::abs(r.mean_retained.mean - expected) < 4.0 * r.mean_retained.se + 1e-3);
  const double zero = std::pow(0.875 * 0.5, 2);
  CHECK(std::abs(r.zero_retained_share.mean - zero) < 4.0 * r.zero_retained_share.se + 1e-3);
  double total = 0.0;
  for (double x : r.retained_count_share) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quality matches the closed form") {
  const auto c = baseline_calibration();
  auto s = small();
  s.quality_law = mc::QualityLaw::moment_matched_normal;
  const auto g = mc::simulate({2, 0.3, 0.0}, 1.0, 0.0, c, s);
  CHECK(g.Q_hat.covers(editor::sorting_quality(1.0, 2.0, 0.3, c)));
  const auto e = mc::simulate({2, 0.3, 0.0}, 1.0, 0.0, c, small());
  CHECK(e.Q_hat.covers(editor::sorting_quality(1.0, 2.0, 0.3, c, DensityMode::exact_convolution)));
}

TEST_CASE("equilibrium acceptance rate is K") {
  const auto c = baseline_calibration();
  const auto r = mc::acceptance_probability_check({2, 0.3, 0.0}, 0.5, c, small());
  CHECK(r.within_se(0.3, 3.0));
  const auto up = mc::cohort_acceptance({2, 0.3, 0.0}, 0.5, 0.2, c, small());
  CHECK(up.mean > r.mean);
}

TEST_CASE("full effort has no composition error") {
  const auto c = baseline_calibration();
  const auto e = mc::composition_approximation_error({2, 0.3, 0.2}, 1.0, c, small());
  CHECK(e.abs_error == 0.0);
  CHECK(e.Q_deterministic.mean == e.Q_stochastic.mean);
}

TEST_CASE("first-order condition against simulation") {
  const auto c = baseline_calibration();
  const auto f = mc::foc_consistency({2, 0.3, 0.0}, 1.0, c, small());
  CHECK(f.consistent);
  CHECK(f.marginal_cost == doctest::Approx(c.kappa * f.a_star).epsilon(1e-12));
}

TEST_CASE("bad configs are rejected") {
  const auto c = baseline_calibration();
  auto s = small();
  s.papers = 4;
  CHECK_THROWS(mc::simulate({2, 0.3, 0.0}, 1.0, 0.0, c, s));
  CHECK_THROWS(mc::simulate({2, 0.3, 0.0}, 1.0, 0.0, c, small(), std::vector<double>(17, 0.0)));
}
