#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "peerreview/calibration.hpp"
#include "peerreview/mc_validator.hpp"

namespace peerreview::tools {

struct ValidationLine {
  std::string check;
  std::string observed;
  std::string expected;
  bool pass = false;
  bool informational = false;
};

/// Monte Carlo oracle suite against the analytic formulas.
std::vector<ValidationLine> run_validation(const Calibration& cal, const mc::SimConfig& sim);

void print_table(std::ostream& os, const std::vector<ValidationLine>& lines);

}  // namespace peerreview::tools
