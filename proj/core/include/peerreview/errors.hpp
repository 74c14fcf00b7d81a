#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace peerreview {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A calibration breaks one or more model assumptions. Every failed
/// condition is listed, not just the first.
class AssumptionViolation : public Error {
 public:
  explicit AssumptionViolation(std::vector<std::string> failures);

  const std::vector<std::string>& failures() const noexcept { return failures_; }

 private:
  std::vector<std::string> failures_;
};

/// Detection removed (almost) every report: m + (1-m)(1-p_det) ~ 0.
class DegenerateRetention : public Error {
 public:
  using Error::Error;
};

/// Bracketing search (quantile or root) ran out of iterations.
class QuantileNonconvergence : public Error {
 public:
  using Error::Error;
};

/// No admissible point exists (calibration target or constrained problem).
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration file or override.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace peerreview
