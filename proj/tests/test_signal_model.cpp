#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "peerreview/errors.hpp"
#include "peerreview/signal_model.hpp"

using namespace peerreview;

TEST_CASE("effective effort") {
  CHECK(signal::effective_effort(0.125, 0.0) == 0.125);
  CHECK(signal::effective_effort(0.125, 0.5) == doctest::Approx(0.125 / 0.5625).epsilon(1e-14));
  CHECK(signal::effective_effort(0.3, 1.0 - 1e-15) == doctest::Approx(1.0));
  CHECK_THROWS_AS(signal::effective_effort(0.0, 1.0), DegenerateRetention);
}

TEST_CASE("retained model arithmetic") {
  const auto c = baseline_calibration();
  const auto a = signal::retained_model(1.0, 0.0, c);
  CHECK(a.M == 1.0);
  CHECK(a.N_ret == 2.0);
  CHECK(a.Sigma2 == doctest::Approx(0.09).epsilon(1e-14));
  const auto b = signal::retained_model(0.125, 0.0, c);
  CHECK(b.Sigma2 == doctest::Approx(0.15125).epsilon(1e-14));
  CHECK(b.N_ret == 2.0);
  const auto d = signal::retained_model(0.125, 0.5, c);
  CHECK(d.N_ret == doctest::Approx(1.125).epsilon(1e-14));
  CHECK(d.M == doctest::Approx(0.2222222222222).epsilon(1e-12));
  CHECK(d.sigma_eff == doctest::Approx(std::sqrt(d.Sigma2 / d.N_ret)).epsilon(1e-14));
}

TEST_CASE("retained model invariants") {
  const auto c = baseline_calibration();
  for (double m : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    for (double p : {0.0, 0.3, 0.8}) {
      if (m == 0.0 && p == 1.0) continue;
      const auto r = signal::retained_model(m, p, c);
      CHECK(r.M >= m - 1e-15);
      CHECK(r.N_ret <= 2.0 + 1e-15);
      CHECK(r.Sigma2 >= 0.09 - 1e-15);
      CHECK(r.Sigma2 <= 0.16 + 1e-15);
      if (p == 0.0 || m == 1.0) CHECK(r.N_ret == doctest::Approx(2.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("gaussian threshold matches the reference values") {
  const auto c = baseline_calibration();
  const auto r = signal::retained_model(1.0, 0.0, c);
  const auto t = signal::threshold_and_density(r.M, r.sigma_eff, 0.3, c, DensityMode::gaussian_approx);
  const auto o = oracle::gaussian_threshold(r.M, r.sigma_eff, 0.3);
  CHECK(t.z == doctest::Approx(o.z).epsilon(1e-12));
  CHECK(t.h == doctest::Approx(o.h).epsilon(1e-12));
  CHECK(t.h_prime == doctest::Approx(o.hp).epsilon(1e-12));
  // frozen reference
  CHECK(t.z == doctest::Approx(0.6878594).epsilon(1e-6));
  CHECK(t.h == doctest::Approx(0.9705675).epsilon(1e-6));
  CHECK(t.h_prime == doctest::Approx(-1.4207547).epsilon(1e-6));

  const auto med = signal::threshold_and_density(r.M, r.sigma_eff, 0.5, c, DensityMode::gaussian_approx);
  const double s = std::sqrt(1.0 / 12.0 + 0.045);
  CHECK(med.z == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(med.h == doctest::Approx(1.0 / (s * std::sqrt(2.0 * std::numbers::pi))).epsilon(1e-12));
}

TEST_CASE("pure noise when nobody exerts effort") {
  const auto c = baseline_calibration();
  for (auto mode : {DensityMode::gaussian_approx, DensityMode::exact_convolution}) {
    const auto t = signal::threshold_and_density(0.0, 0.25, 0.3, c, mode);
    CHECK(t.z == doctest::Approx(oracle::quantile(0.7) * 0.25).epsilon(1e-9));
    CHECK(t.h == doctest::Approx(oracle::pdf(oracle::quantile(0.7)) / 0.25).epsilon(1e-9));
  }
}

TEST_CASE("exact convolution matches quadrature") {
  const auto c = baseline_calibration();
  struct Case {
    double M, N_ret, K;
  };
  for (auto k : {Case{1.0, 2.0, 0.3}, Case{0.2, 2.0, 0.3}, Case{0.5, 1.125, 0.1}, Case{0.9, 20.0, 0.6}}) {
    const double sig = std::sqrt(c.noise_variance(k.M) / k.N_ret);
    const auto t = signal::threshold_and_density(k.M, sig, k.K, c, DensityMode::exact_convolution);
    const oracle::UniformConvolution law{k.M, sig};
    const double z = law.quantile_at(1.0 - k.K);
    CHECK(t.z == doctest::Approx(z).epsilon(1e-8));
    CHECK(t.h == doctest::Approx(law.pdf_at(z)).epsilon(1e-8));
    CHECK(t.h_prime == doctest::Approx(law.dpdf_at(z)).epsilon(1e-7));
  }
  const auto r = signal::retained_model(1.0, 0.0, c);
  const auto t = signal::threshold_and_density(r.M, r.sigma_eff, 0.3, c, DensityMode::exact_convolution);
  CHECK(t.z == doctest::Approx(0.708182).epsilon(1e-6));
  CHECK(t.h == doctest::Approx(0.915113).epsilon(1e-6));
  CHECK(t.h_prime == doctest::Approx(-0.722940).epsilon(1e-6));
}

TEST_CASE("exact density integrates to one") {
  const auto c = baseline_calibration();
  for (double M : {0.05, 0.3, 1.0}) {
    const signal::ExactSignalLaw law(c.quality(), M, 0.2);
    const double total = oracle::simpson([&](double s) { return law.pdf(s); }, law.support_lower(),
                                         law.support_upper(), 20000);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(law.cdf(law.quantile(0.37)) == doctest::Approx(0.37).epsilon(1e-9));
  }
}

TEST_CASE("exact law for a non-uniform quality distribution") {
  auto c = baseline_calibration();
  c.F_spec = DistributionSpec::beta(2.0, 2.0);
  const signal::ExactSignalLaw law(c.quality(), 0.7, 0.25);
  const Distribution F = c.quality();
  for (double s : {0.1, 0.35, 0.8}) {
    const double ref = oracle::simpson(
        [&](double t) { return F.pdf(t) * oracle::pdf((s - 0.7 * t) / 0.25) / 0.25; }, 0.0, 1.0);
    CHECK(law.pdf(s) == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("location shift leaves the density at the threshold unchanged") {
  const auto c = baseline_calibration();
  for (double M : {0.125, 0.5, 1.0}) {
    const double sig = std::sqrt(c.noise_variance(M) / 2.0);
    const auto base = signal::threshold_and_density(M, sig, 0.3, c, DensityMode::exact_convolution);
    for (double a : {0.2, 0.9, 1.7}) {
      const double shift = M * c.beta * a;
      const signal::ExactSignalLaw shifted(c.quality(), M, sig, shift);
      const double z = shifted.quantile(0.7);
      CHECK(z - shift == doctest::Approx(base.z).epsilon(1e-8));
      CHECK(std::abs(shifted.pdf(z) - base.h) <= 1e-8);
    }
  }
}

TEST_CASE("snr increases with effective effort") {
  const auto c = baseline_calibration();
  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double M = i / 20.0;
    const double v = signal::snr(M, 2.0, c);
    CHECK(v > prev);
    prev = v;
    CHECK(v == doctest::Approx(M * M * 2.0 / 12.0 / c.noise_variance(M)).epsilon(1e-14));
  }
}

TEST_CASE("gaussian and exact quantiles converge as noise dominates") {
  const auto c = baseline_calibration();
  double prev = 1.0;
  for (double M : {1.0, 0.5, 0.25, 0.1}) {
    const double sig = std::sqrt(c.noise_variance(M) / 2.0);
    const auto g = signal::threshold_and_density(M, sig, 0.3, c, DensityMode::gaussian_approx);
    const auto e = signal::threshold_and_density(M, sig, 0.3, c, DensityMode::exact_convolution);
    const double gap = std::abs(g.z - e.z);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-3);
}
