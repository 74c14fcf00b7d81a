#include <atomic>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "peerreview/errors.hpp"
#include "peerreview/numerics.hpp"
#include "peerreview/parallel.hpp"

using namespace peerreview;

TEST_CASE("normal helpers match an independent implementation") {
  for (double x : {-3.0, -1.2, 0.0, 0.4, 2.5}) {
    CHECK(numerics::normal_pdf(x) == doctest::Approx(oracle::pdf(x)).epsilon(1e-14));
    CHECK(numerics::normal_cdf(x) == doctest::Approx(oracle::cdf(x)).epsilon(1e-14));
  }
  for (double u : {1e-8, 0.01, 0.3, 0.5, 0.7, 0.999}) {
    CHECK(numerics::normal_quantile(u) == doctest::Approx(oracle::quantile(u)).epsilon(1e-12));
  }
}

TEST_CASE("bisection and golden section") {
  const double r = numerics::bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(r == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
  CHECK_THROWS_AS(numerics::bisect([](double x) { return x * x + 1.0; }, 0.0, 1.0), Error);

  const auto g = numerics::golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK(g.x == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("quadrature and differences") {
  CHECK(numerics::integrate([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  CHECK(numerics::central_difference([](double x) { return std::sin(x); }, 0.7, 1e-4) ==
        doctest::Approx(std::cos(0.7)).epsilon(1e-7));
}

TEST_CASE("parallel_for visits every index once for any worker count") {
  for (unsigned threads : {1u, 2u, 5u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, threads);
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("parallel_for rethrows worker exceptions") {
  CHECK_THROWS_AS(parallel_for(
                      100, [](std::size_t i) {
                        if (i == 57) throw Infeasible("boom");
                      },
                      3),
                  Infeasible);
}

TEST_CASE("nested parallel_for runs inline") {
  std::vector<int> out(16, 0);
  parallel_for(
      4,
      [&](std::size_t i) {
        parallel_for(4, [&](std::size_t j) { out[i * 4 + j] = static_cast<int>(i * 4 + j); }, 4);
      },
      2);
  for (int i = 0; i < 16; ++i) CHECK(out[i] == i);
}
