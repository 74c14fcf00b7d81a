#pragma once

#include "peerreview/calibration.hpp"

namespace peerreview::signal {

/// Share of effortful reports among those that survive detection.
/// Throws DegenerateRetention when m + (1-m)(1-p_det) < 1e-12.
double effective_effort(double m, double p_det);

/// Aggregate retained signal:  s | theta ~ N(M (theta + beta a), Sigma2 / N_ret).
struct RetainedSignalModel {
  double M = 1.0;          ///< effective effort share
  double N_ret = 1.0;      ///< expected retained reports (real valued)
  double Sigma2 = 0.0;     ///< per-report noise variance Sigma^2(M)
  double sigma_eff = 0.0;  ///< sqrt(Sigma2 / N_ret)
  double mean_scale = 1.0; ///< multiplier on theta + beta a (equals M)
};

RetainedSignalModel retained_model(double m, double p_det, const Calibration& cal);

/// Same model for an explicit (possibly non-integer) panel size.
RetainedSignalModel retained_model(double m, double p_det, double panel_size,
                                   const Calibration& cal);

/// Threshold of the polish-free aggregate M*theta + noise and the density
/// and its spatial derivative there.
struct ThresholdDensity {
  double z = 0.0;        ///< (1-K) quantile
  double h = 0.0;        ///< density at z
  double h_prime = 0.0;  ///< d/ds density at z
};

ThresholdDensity threshold_and_density(double M, double sigma_eff, double K,
                                       const Calibration& cal);
ThresholdDensity threshold_and_density(double M, double sigma_eff, double K,
                                       const Calibration& cal, DensityMode mode);

/// Law of  shift + M*theta + nu  with theta ~ F and nu ~ N(0, sigma^2),
/// evaluated exactly (closed form for uniform F, quadrature otherwise).
class ExactSignalLaw {
 public:
  ExactSignalLaw(const Distribution& quality, double M, double sigma, double shift = 0.0);

  double pdf(double s) const;
  double pdf_derivative(double s) const;
  double cdf(double s) const;
  /// Bisection to 1e-10 within 200 iterations; throws QuantileNonconvergence.
  double quantile(double u) const;

  double support_lower() const;  ///< practical bracket, +-12 sigma around M*[lo, hi]
  double support_upper() const;

 private:
  Distribution quality_;
  double M_;
  double sigma_;
  double shift_;
  bool uniform_;
};

/// Signal-to-noise ratio M^2 N_ret Var(theta) / Sigma^2(M).
double snr(double M, double N_ret, const Calibration& cal);

}  // namespace peerreview::signal
