#pragma once

// Small numerical toolkit shared by the solvers. Normal-law helpers wrap
// the standard library / Boost; the bracketing searches are our own so
// that iteration caps map onto the library's error types.

#include <cmath>
#include <functional>
#include <numbers>

namespace peerreview::numerics {

inline constexpr double kInvSqrt2Pi = 0.3989422804014327;

inline double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
double normal_quantile(double p);

/// Bisection for the root of a monotone function on [lo, hi].
/// Stops when the bracket is narrower than `tol`; throws
/// QuantileNonconvergence after `max_iter` halvings or if the bracket does
/// not straddle a sign change.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol = 1e-12, int max_iter = 200);

struct GoldenResult {
  double x;
  double value;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
GoldenResult golden_max(const std::function<double(double)>& f, double lo,
                        double hi, double tol = 1e-9, int max_iter = 200);

/// Adaptive Gauss-Kronrod quadrature on a finite interval.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-12);

/// Central difference with a relative step: h = rel_step * max(|x|, 1).
double central_difference(const std::function<double(double)>& f, double x,
                          double rel_step = 1e-4);

}  // namespace peerreview::numerics
