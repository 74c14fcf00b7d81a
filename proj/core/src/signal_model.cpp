#include "peerreview/signal_model.hpp"

#include <cmath>

#include "peerreview/errors.hpp"
#include "peerreview/numerics.hpp"

namespace peerreview::signal {

namespace nm = numerics;

namespace {

constexpr double kMinRetention = 1e-12;
constexpr double kQuantileTol = 1e-10;
constexpr int kQuantileMaxIter = 200;
// below this effective effort the quality term is dropped (pure noise)
constexpr double kNoQualityShare = 1e-12;

double retention(double m, double p_det) {
  if (p_det == 0.0) return 1.0;
  const double r = m + (1.0 - m) * (1.0 - p_det);
  if (r < kMinRetention) {
    throw DegenerateRetention("detection leaves no retained reports (m = " + std::to_string(m) +
                              ", p_det = " + std::to_string(p_det) + ")");
  }
  return r;
}

}  // namespace

double effective_effort(double m, double p_det) { return m / retention(m, p_det); }

RetainedSignalModel retained_model(double m, double p_det, double panel_size,
                                   const Calibration& cal) {
  const double r = retention(m, p_det);
  RetainedSignalModel out;
  out.M = m / r;
  out.N_ret = panel_size * r;
  out.Sigma2 = cal.noise_variance(out.M);
  out.sigma_eff = std::sqrt(out.Sigma2 / out.N_ret);
  out.mean_scale = out.M;
  return out;
}

RetainedSignalModel retained_model(double m, double p_det, const Calibration& cal) {
  return retained_model(m, p_det, static_cast<double>(cal.N), cal);
}

// ---------------------------------------------------------------------------
// Exact law of shift + M theta + nu

ExactSignalLaw::ExactSignalLaw(const Distribution& quality, double M, double sigma, double shift)
    : quality_(quality),
      M_(M),
      sigma_(sigma),
      shift_(shift),
      uniform_(quality.spec().family == DistributionFamily::uniform) {}

double ExactSignalLaw::support_lower() const {
  return shift_ + M_ * quality_.lower() - 12.0 * sigma_;
}

double ExactSignalLaw::support_upper() const {
  return shift_ + M_ * quality_.upper() + 12.0 * sigma_;
}

double ExactSignalLaw::pdf(double s) const {
  const double x = s - shift_;
  if (M_ < kNoQualityShare) return nm::normal_pdf(x / sigma_) / sigma_;
  if (uniform_) {
    const double a = M_ * quality_.lower();
    const double b = M_ * quality_.upper();
    return (nm::normal_cdf((x - a) / sigma_) - nm::normal_cdf((x - b) / sigma_)) / (b - a);
  }
  return nm::integrate(
      [&](double t) { return quality_.pdf(t) * nm::normal_pdf((x - M_ * t) / sigma_) / sigma_; },
      quality_.lower(), quality_.upper());
}

double ExactSignalLaw::pdf_derivative(double s) const {
  const double x = s - shift_;
  auto dphi = [&](double u) { return -u * nm::normal_pdf(u); };
  if (M_ < kNoQualityShare) return dphi(x / sigma_) / (sigma_ * sigma_);
  if (uniform_) {
    const double a = M_ * quality_.lower();
    const double b = M_ * quality_.upper();
    return (nm::normal_pdf((x - a) / sigma_) - nm::normal_pdf((x - b) / sigma_)) /
           ((b - a) * sigma_);
  }
  return nm::integrate(
      [&](double t) { return quality_.pdf(t) * dphi((x - M_ * t) / sigma_) / (sigma_ * sigma_); },
      quality_.lower(), quality_.upper());
}

double ExactSignalLaw::cdf(double s) const {
  const double x = s - shift_;
  if (M_ < kNoQualityShare) return nm::normal_cdf(x / sigma_);
  if (uniform_) {
    // (1/(b-a)) * integral_a^b Phi((x-u)/sigma) du, using
    // integral Phi(v) dv = v Phi(v) + phi(v)
    const double a = M_ * quality_.lower();
    const double b = M_ * quality_.upper();
    auto G = [](double v) { return v * nm::normal_cdf(v) + nm::normal_pdf(v); };
    return sigma_ * (G((x - a) / sigma_) - G((x - b) / sigma_)) / (b - a);
  }
  return nm::integrate(
      [&](double t) { return quality_.pdf(t) * nm::normal_cdf((x - M_ * t) / sigma_); },
      quality_.lower(), quality_.upper());
}

double ExactSignalLaw::quantile(double u) const {
  double lo = support_lower();
  double hi = support_upper();
  double f_lo = cdf(lo) - u;
  double f_hi = cdf(hi) - u;
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw QuantileNonconvergence("exact signal quantile: target outside bracket");
  }
  for (int i = 0; i < kQuantileMaxIter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= kQuantileTol) return mid;
    if (cdf(mid) - u < 0.0) lo = mid;
    else hi = mid;
  }
  throw QuantileNonconvergence("exact signal quantile: no convergence within 200 iterations");
}

// ---------------------------------------------------------------------------

ThresholdDensity threshold_and_density(double M, double sigma_eff, double K,
                                       const Calibration& cal, DensityMode mode) {
  const auto quality = cal.quality();
  ThresholdDensity out;
  if (mode == DensityMode::gaussian_approx) {
    const double mean = M * quality.mean();
    const double var = M * M * quality.variance() + sigma_eff * sigma_eff;
    const double sd = std::sqrt(var);
    const double q = nm::normal_quantile(1.0 - K);
    out.z = mean + q * sd;
    out.h = nm::normal_pdf(q) / sd;
    out.h_prime = -q * nm::normal_pdf(q) / var;
    return out;
  }
  const ExactSignalLaw law(quality, M, sigma_eff);
  out.z = law.quantile(1.0 - K);
  out.h = law.pdf(out.z);
  out.h_prime = law.pdf_derivative(out.z);
  return out;
}

ThresholdDensity threshold_and_density(double M, double sigma_eff, double K,
                                       const Calibration& cal) {
  return threshold_and_density(M, sigma_eff, K, cal, cal.density_mode);
}

double snr(double M, double N_ret, const Calibration& cal) {
  return M * M * N_ret * cal.quality().variance() / cal.noise_variance(M);
}

}  // namespace peerreview::signal
