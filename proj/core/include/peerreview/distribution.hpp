#pragma once

#include <string>
#include <vector>

namespace peerreview {

enum class DistributionFamily { uniform, truncated_normal, beta };

/// Descriptor of a bounded, log-concave law on a closed interval.
///
/// uniform:          no parameters.
/// truncated_normal: parameters = {mean, sd} of the untruncated normal.
/// beta:             parameters = {alpha, beta}, both >= 1, rescaled onto
///                   [lower, upper].
struct DistributionSpec {
  DistributionFamily family = DistributionFamily::uniform;
  std::vector<double> parameters;
  double lower = 0.0;
  double upper = 1.0;

  static DistributionSpec uniform(double lo = 0.0, double hi = 1.0);
  static DistributionSpec truncated_normal(double mean, double sd, double lo, double hi);
  static DistributionSpec beta(double a, double b, double lo = 0.0, double hi = 1.0);

  bool operator==(const DistributionSpec&) const = default;
};

std::string to_string(DistributionFamily family);
DistributionFamily family_from_string(const std::string& name);

/// Reasons `spec` is not a valid bounded log-concave law (empty if fine).
std::vector<std::string> check_distribution(const DistributionSpec& spec,
                                            const std::string& label);

/// Evaluates a validated DistributionSpec.
class Distribution {
 public:
  explicit Distribution(DistributionSpec spec);

  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double u) const;
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double lower() const { return spec_.lower; }
  double upper() const { return spec_.upper; }
  double width() const { return spec_.upper - spec_.lower; }
  const DistributionSpec& spec() const { return spec_; }

 private:
  DistributionSpec spec_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  // truncated-normal normalisation
  double cdf_lo_ = 0.0;
  double mass_ = 1.0;
};

}  // namespace peerreview
