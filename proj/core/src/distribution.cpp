#include "peerreview/distribution.hpp"

#include <boost/math/distributions/beta.hpp>

#include <cmath>
#include <algorithm>

#include "peerreview/errors.hpp"
#include "peerreview/numerics.hpp"

namespace peerreview {

namespace nm = numerics;

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  return {DistributionFamily::uniform, {}, lo, hi};
}

DistributionSpec DistributionSpec::truncated_normal(double mean, double sd, double lo,
                                                    double hi) {
  return {DistributionFamily::truncated_normal, {mean, sd}, lo, hi};
}

DistributionSpec DistributionSpec::beta(double a, double b, double lo, double hi) {
  return {DistributionFamily::beta, {a, b}, lo, hi};
}

std::string to_string(DistributionFamily family) {
  switch (family) {
    case DistributionFamily::uniform: return "uniform";
    case DistributionFamily::truncated_normal: return "truncated_normal";
    case DistributionFamily::beta: return "beta_shape_ge1";
  }
  return "unknown";
}

DistributionFamily family_from_string(const std::string& name) {
  if (name == "uniform") return DistributionFamily::uniform;
  if (name == "truncated_normal") return DistributionFamily::truncated_normal;
  if (name == "beta_shape_ge1" || name == "beta") return DistributionFamily::beta;
  throw ConfigError("unknown distribution family '" + name + "'");
}

std::vector<std::string> check_distribution(const DistributionSpec& spec,
                                            const std::string& label) {
  std::vector<std::string> out;
  if (!(std::isfinite(spec.lower) && std::isfinite(spec.upper) && spec.lower < spec.upper)) {
    out.push_back(label + ": support must be a bounded interval with lower < upper");
  }
  switch (spec.family) {
    case DistributionFamily::uniform:
      if (!spec.parameters.empty()) out.push_back(label + ": uniform takes no parameters");
      break;
    case DistributionFamily::truncated_normal:
      if (spec.parameters.size() != 2 || !(spec.parameters[1] > 0.0)) {
        out.push_back(label + ": truncated_normal needs {mean, sd > 0}");
      }
      break;
    case DistributionFamily::beta:
      if (spec.parameters.size() != 2 || !(spec.parameters[0] >= 1.0) ||
          !(spec.parameters[1] >= 1.0)) {
        out.push_back(label + ": beta needs shape parameters >= 1 (log-concavity)");
      }
      break;
  }
  return out;
}

Distribution::Distribution(DistributionSpec spec) : spec_(std::move(spec)) {
  if (auto errs = check_distribution(spec_, "distribution"); !errs.empty()) {
    throw ConfigError(errs.front());
  }
  const double lo = spec_.lower;
  const double hi = spec_.upper;
  const double w = hi - lo;
  switch (spec_.family) {
    case DistributionFamily::uniform:
      mean_ = 0.5 * (lo + hi);
      variance_ = w * w / 12.0;
      break;
    case DistributionFamily::truncated_normal: {
      const double mu = spec_.parameters[0];
      const double sd = spec_.parameters[1];
      const double a = (lo - mu) / sd;
      const double b = (hi - mu) / sd;
      cdf_lo_ = nm::normal_cdf(a);
      mass_ = nm::normal_cdf(b) - cdf_lo_;
      const double pa = nm::normal_pdf(a);
      const double pb = nm::normal_pdf(b);
      const double r = (pa - pb) / mass_;
      mean_ = mu + sd * r;
      variance_ = sd * sd * (1.0 + (a * pa - b * pb) / mass_ - r * r);
      break;
    }
    case DistributionFamily::beta: {
      const double al = spec_.parameters[0];
      const double be = spec_.parameters[1];
      const double s = al + be;
      mean_ = lo + w * al / s;
      variance_ = w * w * al * be / (s * s * (s + 1.0));
      break;
    }
  }
}

double Distribution::pdf(double x) const {
  if (x < spec_.lower || x > spec_.upper) return 0.0;
  const double w = width();
  switch (spec_.family) {
    case DistributionFamily::uniform:
      return 1.0 / w;
    case DistributionFamily::truncated_normal: {
      const double sd = spec_.parameters[1];
      return nm::normal_pdf((x - spec_.parameters[0]) / sd) / (sd * mass_);
    }
    case DistributionFamily::beta: {
      boost::math::beta_distribution<double> d(spec_.parameters[0], spec_.parameters[1]);
      return boost::math::pdf(d, (x - spec_.lower) / w) / w;
    }
  }
  return 0.0;
}

double Distribution::cdf(double x) const {
  if (x <= spec_.lower) return 0.0;
  if (x >= spec_.upper) return 1.0;
  const double w = width();
  switch (spec_.family) {
    case DistributionFamily::uniform:
      return (x - spec_.lower) / w;
    case DistributionFamily::truncated_normal: {
      const double sd = spec_.parameters[1];
      return (nm::normal_cdf((x - spec_.parameters[0]) / sd) - cdf_lo_) / mass_;
    }
    case DistributionFamily::beta: {
      boost::math::beta_distribution<double> d(spec_.parameters[0], spec_.parameters[1]);
      return boost::math::cdf(d, (x - spec_.lower) / w);
    }
  }
  return 0.0;
}

double Distribution::quantile(double u) const {
  if (u <= 0.0) return spec_.lower;
  if (u >= 1.0) return spec_.upper;
  const double w = width();
  switch (spec_.family) {
    case DistributionFamily::uniform:
      return spec_.lower + u * w;
    case DistributionFamily::truncated_normal: {
      const double sd = spec_.parameters[1];
      const double x = spec_.parameters[0] + sd * nm::normal_quantile(cdf_lo_ + u * mass_);
      return std::clamp(x, spec_.lower, spec_.upper);
    }
    case DistributionFamily::beta: {
      boost::math::beta_distribution<double> d(spec_.parameters[0], spec_.parameters[1]);
      return spec_.lower + w * boost::math::quantile(d, u);
    }
  }
  return spec_.lower;
}

}  // namespace peerreview
