#include "peerreview/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "peerreview/errors.hpp"

namespace peerreview::numerics {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
              int max_iter) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw QuantileNonconvergence("bisect: bracket [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "] does not straddle a root");
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol) return mid;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo <= tol) return 0.5 * (lo + hi);
  throw QuantileNonconvergence("bisect: no convergence within " + std::to_string(max_iter) +
                               " iterations");
}

GoldenResult golden_max(const std::function<double(double)>& f, double lo, double hi,
                        double tol, int max_iter) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol) {
  if (hi <= lo) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, rel_tol);
}

double central_difference(const std::function<double(double)>& f, double x, double rel_step) {
  const double h = rel_step * std::max(std::abs(x), 1.0);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace peerreview::numerics
