#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "peerreview/calibration.hpp"
#include "peerreview/editor_objective.hpp"
#include "peerreview/reform_solver.hpp"

namespace peerreview::sweep {

enum class Parameter { R, V, sigma_s, N, gamma };
enum class Output { K_star, p_det_star, m, U_E_gain, U_A, a_star };

std::string to_string(Parameter p);
Parameter parameter_from_string(const std::string& name);
std::string to_string(Output o);
Output output_from_string(const std::string& name);

struct SweepSpec {
  Parameter parameter = Parameter::R;
  std::vector<double> values;       ///< nonempty, strictly monotone
  /// Capability grid per value. Empty means "at the transition": the
  /// post-transition effort m1 of each swept calibration.
  std::vector<double> gamma_grid;
  std::set<Output> outputs{Output::K_star, Output::p_det_star, Output::m,
                           Output::U_E_gain, Output::U_A, Output::a_star};
};

/// Default gamma grid: 0, 0.02, ..., 0.98.
std::vector<double> default_gamma_grid();

/// The standard sweep for each parameter (R: -0.04..-0.22, V: 0.6..2.4,
/// sigma_s: 0.33..0.75, N: 1..20 at the transition, gamma: baseline grid).
SweepSpec default_sweep(Parameter p);

struct SweepRow {
  double value = 0.0;
  double gamma = 0.0;
  bool valid = true;
  std::string error;
  double gamma1 = 0.0;
  double m = 0.0;
  double K_star = 0.0;
  double p_det_star = 0.0;
  double U_E_gain = 0.0;  ///< U_E at the reform optimum minus U_E at (K0, 0)
  double U_A = 0.0;       ///< author welfare at the reform optimum
  double a_star = 0.0;    ///< polish at the reform optimum
  double a_star_decentralized = 0.0;
  double U_A_decentralized = 0.0;
};

struct SweepTable {
  SweepSpec spec;
  std::vector<SweepRow> rows;

  /// CSV with a header row; RFC-4180 quoting; numbers at 12 significant digits.
  std::string to_csv() const;
};

/// Returns the calibration with the swept parameter set. R and sigma_s keep
/// the reviewer cost scale c0 fixed, so m1 moves mechanically with R.
Calibration with_parameter(const Calibration& cal, Parameter p, double value);

/// One row per (value, gamma). Rows whose calibration fails validation are
/// marked invalid and the sweep continues. Throws std::invalid_argument on a
/// malformed spec.
SweepTable run_sweep(const SweepSpec& spec, const Calibration& cal);

struct BaselineReport {
  double gamma1 = 0.0;
  double m1 = 0.0;
  int reform_panel_size = 0;
  reform::PremiseReport premises;
  double gamma_pre = 0.0;
  double gamma_post = 0.0;
  reform::ReformSolution pre;
  reform::ReformSolution post;
  editor::Misalignment misalignment;
  reform::RestorationResult restoration;
};

/// Headline numbers for a calibration; evaluated at gamma1 - 0.12 and
/// gamma1 + 0.08 (clamped into [0, 0.98]) for the pre/post reform solves.
BaselineReport baseline_report(const Calibration& cal);

}  // namespace peerreview::sweep
