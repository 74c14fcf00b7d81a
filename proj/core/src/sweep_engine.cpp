#include "peerreview/sweep_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "peerreview/author_game.hpp"
#include "peerreview/errors.hpp"
#include "peerreview/parallel.hpp"
#include "peerreview/reviewer_game.hpp"

namespace peerreview::sweep {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* column_name(Output o) {
  switch (o) {
    case Output::K_star: return "K_star[share]";
    case Output::p_det_star: return "p_det_star[prob]";
    case Output::m: return "m[share]";
    case Output::U_E_gain: return "U_E_gain[utils]";
    case Output::U_A: return "U_A[utils]";
    case Output::a_star: return "a_star[polish]";
  }
  return "";
}

double column_value(const SweepRow& r, Output o) {
  switch (o) {
    case Output::K_star: return r.K_star;
    case Output::p_det_star: return r.p_det_star;
    case Output::m: return r.m;
    case Output::U_E_gain: return r.U_E_gain;
    case Output::U_A: return r.U_A;
    case Output::a_star: return r.a_star;
  }
  return 0.0;
}

void check_spec(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
  if (spec.values.size() > 1) {
    const bool up = spec.values[1] > spec.values[0];
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
      const bool step_up = spec.values[i] > spec.values[i - 1];
      if (spec.values[i] == spec.values[i - 1] || step_up != up) {
        throw std::invalid_argument("sweep: values must be strictly monotone");
      }
    }
  }
  for (double g : spec.gamma_grid) {
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("sweep: gamma grid must lie in [0,1]");
  }
  if (spec.parameter == Parameter::N) {
    for (double v : spec.values) {
      if (v < 1.0 || v != std::floor(v)) {
        throw std::invalid_argument("sweep: N values must be positive integers");
      }
    }
  }
}

SweepRow evaluate_row(const Calibration& base, Parameter param, double value, double gamma,
                      bool at_transition) {
  SweepRow row;
  row.value = value;
  row.gamma = gamma;
  try {
    const Calibration cal = validate(with_parameter(base, param, value));
    row.gamma1 = reviewer::gamma1(0.0, cal);
    if (at_transition) {
      row.gamma = row.gamma1;
      row.m = reviewer::post_transition_effort(cal);
    } else {
      row.m = reviewer::effort_rate(row.gamma, cal);
    }
    const int panel = param == Parameter::N ? cal.N : editor::reform_panel_size(cal);
    const auto sol = reform::solve_reform_at_effort(row.m, panel, cal, std::nullopt, false);
    const double n = static_cast<double>(panel);
    row.K_star = sol.K_star;
    row.p_det_star = sol.p_det_star;
    row.U_E_gain = sol.U_E_star - sol.U_E_decentralized;
    row.U_A = sol.U_A_star;
    row.a_star = author::equilibrium_polish(row.m, sol.K_star, sol.p_det_star, n, cal).a_star;
    const auto dec = author::equilibrium_polish(row.m, cal.K0, 0.0, n, cal);
    row.a_star_decentralized = dec.a_star;
    row.U_A_decentralized = dec.U_A;
  } catch (const AssumptionViolation& e) {
    row.valid = false;
    row.error = e.what();
  } catch (const Infeasible& e) {
    row.valid = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::string to_string(Parameter p) {
  switch (p) {
    case Parameter::R: return "R";
    case Parameter::V: return "V";
    case Parameter::sigma_s: return "sigma_s";
    case Parameter::N: return "N";
    case Parameter::gamma: return "gamma";
  }
  return "";
}

Parameter parameter_from_string(const std::string& name) {
  for (auto p : {Parameter::R, Parameter::V, Parameter::sigma_s, Parameter::N, Parameter::gamma}) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown sweep parameter: " + name);
}

std::string to_string(Output o) {
  switch (o) {
    case Output::K_star: return "K_star";
    case Output::p_det_star: return "p_det_star";
    case Output::m: return "m";
    case Output::U_E_gain: return "U_E_gain";
    case Output::U_A: return "U_A";
    case Output::a_star: return "a_star";
  }
  return "";
}

Output output_from_string(const std::string& name) {
  for (auto o : {Output::K_star, Output::p_det_star, Output::m, Output::U_E_gain, Output::U_A,
                 Output::a_star}) {
    if (to_string(o) == name) return o;
  }
  throw std::invalid_argument("unknown sweep output: " + name);
}

std::vector<double> default_gamma_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 49; ++i) g.push_back(i / 50.0);
  return g;
}

SweepSpec default_sweep(Parameter p) {
  SweepSpec s;
  s.parameter = p;
  switch (p) {
    case Parameter::R:
      s.values = {-0.04, -0.08, -0.15, -0.22};
      s.gamma_grid = default_gamma_grid();
      break;
    case Parameter::V:
      s.values = {0.6, 1.0, 1.4, 1.8, 2.4};
      s.gamma_grid = default_gamma_grid();
      break;
    case Parameter::sigma_s:
      s.values = {0.33, 0.45, 0.6, 0.75};
      s.gamma_grid = default_gamma_grid();
      break;
    case Parameter::N:
      for (int n = 1; n <= 20; ++n) s.values.push_back(n);
      break;
    case Parameter::gamma:
      s.values = default_gamma_grid();
      break;
  }
  return s;
}

std::string SweepTable::to_csv() const {
  std::ostringstream os;
  os << csv_field(to_string(spec.parameter)) << ",gamma,valid,error,gamma1";
  for (auto o : spec.outputs) os << ',' << csv_field(column_name(o));
  os << ",a_star_decentralized[polish],U_A_decentralized[utils]\r\n";
  for (const auto& r : rows) {
    os << num(r.value) << ',' << num(r.gamma) << ',' << (r.valid ? "true" : "false") << ','
       << csv_field(r.error) << ',' << num(r.gamma1);
    for (auto o : spec.outputs) os << ',' << (r.valid ? num(column_value(r, o)) : "");
    if (r.valid) os << ',' << num(r.a_star_decentralized) << ',' << num(r.U_A_decentralized);
    else os << ",,";
    os << "\r\n";
  }
  return os.str();
}

Calibration with_parameter(const Calibration& cal, Parameter p, double value) {
  Calibration out = cal;
  switch (p) {
    case Parameter::R: out.R = value; break;
    case Parameter::V: out.V = value; break;
    case Parameter::sigma_s: out.sigma_s = value; break;
    case Parameter::N: out.N = static_cast<int>(std::lround(value)); break;
    case Parameter::gamma: break;
  }
  return out;
}

SweepTable run_sweep(const SweepSpec& spec, const Calibration& cal) {
  check_spec(spec);
  struct Job {
    double value;
    double gamma;
    bool at_transition;
  };
  std::vector<Job> jobs;
  for (double v : spec.values) {
    if (spec.parameter == Parameter::gamma) {
      jobs.push_back({v, v, false});
    } else if (spec.gamma_grid.empty()) {
      jobs.push_back({v, 0.0, true});
    } else {
      for (double g : spec.gamma_grid) jobs.push_back({v, g, false});
    }
  }
  SweepTable table;
  table.spec = spec;
  table.rows.resize(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    table.rows[i] = evaluate_row(cal, spec.parameter, jobs[i].value, jobs[i].gamma,
                                 jobs[i].at_transition);
  });
  return table;
}

BaselineReport baseline_report(const Calibration& raw) {
  const Calibration cal = validate(raw);
  BaselineReport b;
  b.gamma1 = reviewer::gamma1(0.0, cal);
  b.m1 = reviewer::post_transition_effort(cal);
  b.reform_panel_size = editor::reform_panel_size(cal);
  b.premises = reform::premise_report(cal);
  b.gamma_pre = std::clamp(b.gamma1 - 0.12, 0.0, 0.98);
  b.gamma_post = std::clamp(b.gamma1 + 0.08, 0.0, 0.98);
  b.pre = reform::solve_reform(b.gamma_pre, cal);
  b.post = reform::solve_reform(b.gamma_post, cal);
  b.misalignment = editor::misalignment_at_transition(cal);
  b.restoration = reform::restoration_scan(cal, cal.solver.N_max);
  return b;
}

}  // namespace peerreview::sweep
