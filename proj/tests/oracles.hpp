#pragma once

// Reference computations for the tests. These deliberately avoid the
// library's own numerics: Boost's normal distribution, composite Simpson
// quadrature, and plain bisection.

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <functional>

namespace oracle {

inline double pdf(double x) { return boost::math::pdf(boost::math::normal(), x); }
inline double cdf(double x) { return boost::math::cdf(boost::math::normal(), x); }
inline double quantile(double u) { return boost::math::quantile(boost::math::normal(), u); }

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Gaussian-approximation threshold for M*theta + noise with theta ~ U[0,1].
struct Gauss {
  double z, h, hp;
};

inline Gauss gaussian_threshold(double M, double sigma_eff, double K) {
  const double s = std::sqrt(M * M / 12.0 + sigma_eff * sigma_eff);
  const double q = quantile(1.0 - K);
  return {0.5 * M + q * s, pdf(q) / s, -q * pdf(q) / (s * s)};
}

/// Exact law of M*theta + nu, theta ~ U[0,1], nu ~ N(0, sigma^2), by
/// quadrature over theta.
struct UniformConvolution {
  double M, sigma;

  double pdf_at(double s) const {
    return simpson([&](double t) { return pdf((s - M * t) / sigma) / sigma; }, 0.0, 1.0, 2000);
  }
  double dpdf_at(double s) const {
    return simpson(
        [&](double t) {
          const double x = (s - M * t) / sigma;
          return -x * pdf(x) / (sigma * sigma);
        },
        0.0, 1.0, 2000);
  }
  double cdf_at(double s) const {
    return simpson([&](double t) { return cdf((s - M * t) / sigma); }, 0.0, 1.0, 2000);
  }
  double quantile_at(double u) const {
    return bisect([&](double s) { return cdf_at(s) - u; }, -10.0 * sigma, M + 10.0 * sigma);
  }
};

/// E[theta | top K] with theta ~ U[0,1] and signal M*theta + N(0, sigma^2).
inline double exact_sorting_quality(double M, double sigma, double K) {
  const UniformConvolution law{M, sigma};
  const double z = law.quantile_at(1.0 - K);
  const double num = simpson([&](double t) { return t * (1.0 - cdf((z - M * t) / sigma)); }, 0.0,
                             1.0, 4000);
  return num / K;
}

}  // namespace oracle
