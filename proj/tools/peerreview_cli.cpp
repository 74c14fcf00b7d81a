#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "peerreview/author_game.hpp"
#include "peerreview/config.hpp"
#include "peerreview/editor_objective.hpp"
#include "peerreview/errors.hpp"
#include "peerreview/reform_solver.hpp"
#include "peerreview/report.hpp"
#include "peerreview/reviewer_game.hpp"
#include "peerreview/sweep_engine.hpp"
#include "validation_suite.hpp"

namespace fs = std::filesystem;
using namespace peerreview;

namespace {

enum Exit { kOk = 0, kUsage = 1, kAssumption = 2, kNonconvergence = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "json";
  std::optional<double> gamma;
  std::string parameter;
  bool at_transition = false;
  int n_max = 0;
  std::int64_t papers = 100000;
  int replicates = 20;
};

/// Loads the config file (or the built-in baseline), applies overrides, and
/// validates. `gamma=` overrides are routed to the command.
Calibration prepare(Options& opt) {
  Calibration cal = opt.config_path.empty() ? baseline_calibration() : config::load(opt.config_path);
  for (const auto& ov : opt.overrides) {
    const auto eq = ov.find('=');
    if (eq != std::string::npos && ov.substr(0, eq) == "gamma") {
      try {
        std::size_t used = 0;
        const std::string v = ov.substr(eq + 1);
        opt.gamma = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw ConfigError("invalid override: " + ov);
      }
      continue;
    }
    config::apply_override(cal, ov);
  }
  return validate(cal);
}

void emit(const Options& opt, const std::string& filename, const std::string& content) {
  if (opt.out_dir.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(opt.out_dir);
  const fs::path path = fs::path(opt.out_dir) / filename;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  std::cerr << "wrote " << path.string() << "\n";
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (opt.format == f) return;
  }
  throw UsageError("format '" + opt.format + "' is not supported by this command");
}

void warn_leverage(const Calibration& cal) {
  const auto d = author::leverage_diagnostic(cal.K0, 0.0, editor::reform_panel_size(cal), cal);
  if (!d.monotone) {
    std::fprintf(stderr,
                 "warning: leverage m*h(z(m,K0)) is not monotone in m (drop %.3g near m=%.3g); "
                 "polish may fall with effort\n",
                 d.worst_drop, d.at_m);
  }
}

double r12(double x) { return config::round_sig(x); }

int cmd_emit_config(Options& opt) {
  require_format(opt, {"json"});
  emit(opt, "table1.json", config::to_json(baseline_calibration()));
  return kOk;
}

int cmd_baseline(Options& opt) {
  require_format(opt, {"json"});
  const auto cal = prepare(opt);
  warn_leverage(cal);
  emit(opt, "baseline.json", report::to_json(sweep::baseline_report(cal)));
  return kOk;
}

int cmd_solve(Options& opt) {
  require_format(opt, {"json"});
  const auto cal = prepare(opt);
  if (!opt.gamma) throw UsageError("solve needs a capability level: --gamma or --override gamma=");
  if (!(*opt.gamma >= 0.0 && *opt.gamma <= 1.0)) throw ConfigError("gamma must lie in [0,1]");
  warn_leverage(cal);
  emit(opt, "solve.json", report::to_json(reform::solve_reform(*opt.gamma, cal)));
  return kOk;
}

int cmd_premises(Options& opt) {
  require_format(opt, {"json"});
  const auto cal = prepare(opt);
  emit(opt, "premises.json", report::to_json(reform::premise_report(cal)));
  return kOk;
}

int cmd_sharpness(Options& opt) {
  require_format(opt, {"json", "csv"});
  const auto cal = prepare(opt);
  const auto p = reform::premise_report(cal);
  const auto& s = cal.solver;
  const double N = p.panel_size;
  std::vector<std::array<double, 3>> table;
  for (int i = 0; i < s.m_grid_points; ++i) {
    const double m = s.m_grid_min + i * (1.0 - s.m_grid_min) / (s.m_grid_points - 1);
    table.push_back({m, reform::score_ratio(m, cal.K0, N, cal, DensityMode::exact_convolution),
                     reform::score_ratio(m, cal.K0, N, cal, DensityMode::gaussian_approx)});
  }
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "m,rho_exact,rho_gaussian\r\n";
    char buf[128];
    for (const auto& row : table) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\r\n", row[0], row[1], row[2]);
      os << buf;
    }
    emit(opt, "sharpness.csv", os.str());
    return kOk;
  }
  nlohmann::ordered_json j{{"psi_1", r12(p.psi_1)},
                           {"psi_1_minus_V", r12(p.psi_1 - cal.V)},
                           {"rho_bar", r12(p.rho_bar)},
                           {"rho_bar_at_m", r12(p.rho_bar_at_m)},
                           {"rho_bar_exact", r12(p.rho_bar_exact)},
                           {"rho_bar_gaussian", r12(p.rho_bar_gaussian)},
                           {"m_bar", r12(p.m_bar)},
                           {"m1", r12(p.m1)},
                           {"margin", r12(p.m_bar / p.m1)},
                           {"holds", p.p3.holds}};
  auto& rows = j["rho"] = nlohmann::ordered_json::array();
  for (const auto& row : table) {
    rows.push_back({{"m", r12(row[0])}, {"exact", r12(row[1])}, {"gaussian", r12(row[2])}});
  }
  emit(opt, "sharpness.json", j.dump(2) + "\n");
  return kOk;
}

int cmd_restoration(Options& opt) {
  require_format(opt, {"json"});
  const auto cal = prepare(opt);
  const int n_max = opt.n_max > 0 ? opt.n_max : cal.solver.N_max;
  emit(opt, "restoration.json", report::to_json(reform::restoration_scan(cal, n_max)));
  return kOk;
}

std::string sweep_json(const sweep::SweepTable& t) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json j{{"value", r12(r.value)}, {"gamma", r12(r.gamma)}, {"valid", r.valid}};
    if (!r.valid) {
      j["error"] = r.error;
    } else {
      j["gamma1"] = r12(r.gamma1);
      for (auto o : t.spec.outputs) {
        double v = 0.0;
        switch (o) {
          case sweep::Output::K_star: v = r.K_star; break;
          case sweep::Output::p_det_star: v = r.p_det_star; break;
          case sweep::Output::m: v = r.m; break;
          case sweep::Output::U_E_gain: v = r.U_E_gain; break;
          case sweep::Output::U_A: v = r.U_A; break;
          case sweep::Output::a_star: v = r.a_star; break;
        }
        j[sweep::to_string(o)] = r12(v);
      }
      j["a_star_decentralized"] = r12(r.a_star_decentralized);
      j["U_A_decentralized"] = r12(r.U_A_decentralized);
    }
    rows.push_back(std::move(j));
  }
  nlohmann::ordered_json out{{"parameter", sweep::to_string(t.spec.parameter)}, {"rows", rows}};
  return out.dump(2) + "\n";
}

int cmd_sweep(Options& opt) {
  require_format(opt, {"json", "csv"});
  const auto cal = prepare(opt);
  std::vector<sweep::Parameter> params;
  if (opt.parameter.empty() || opt.parameter == "all") {
    params = {sweep::Parameter::R, sweep::Parameter::V, sweep::Parameter::sigma_s,
              sweep::Parameter::N};
  } else {
    try {
      params = {sweep::parameter_from_string(opt.parameter)};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  for (auto p : params) {
    auto spec = sweep::default_sweep(p);
    if (opt.at_transition && p != sweep::Parameter::gamma) spec.gamma_grid.clear();
    if (opt.gamma && p != sweep::Parameter::gamma) spec.gamma_grid = {*opt.gamma};
    const auto table = sweep::run_sweep(spec, cal);
    const std::string stem = "sweep_" + sweep::to_string(p);
    if (opt.format == "csv") emit(opt, stem + ".csv", table.to_csv());
    else emit(opt, stem + ".json", sweep_json(table));
  }
  return kOk;
}

int cmd_validate(Options& opt) {
  require_format(opt, {"json"});
  const auto cal = prepare(opt);
  mc::SimConfig sim;
  sim.papers = opt.papers;
  sim.replicates = opt.replicates;
  if (opt.seed) sim.seed = *opt.seed;
  if (sim.papers < 1000) throw UsageError("--papers must be at least 1000 for CI-based checks");
  if (sim.replicates < 2) throw UsageError("--replicates must be at least 2");
  const auto lines = tools::run_validation(cal, sim);
  std::ostringstream os;
  tools::print_table(os, lines);
  int failed = 0;
  for (const auto& l : lines) failed += !l.pass && !l.informational;
  os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
  emit(opt, "validate.txt", os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peer review equilibrium and editorial reform solver"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Calibration JSON (default: built-in baseline)")
        ->check(CLI::ExistingFile);
    sub->add_option("--override", opt.overrides, "key=value applied after the config file")
        ->allow_extra_args(false);
    sub->add_option("--seed", opt.seed, "Random seed for Monte Carlo commands");
    sub->add_option("--out-dir", opt.out_dir, "Write results here instead of standard output");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  std::vector<std::pair<CLI::App*, int (*)(Options&)>> verbs;
  auto verb = [&](const char* name, const char* help, int (*fn)(Options&)) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    verbs.emplace_back(sub, fn);
    return sub;
  };

  verb("emit-config", "Write the baseline calibration file", cmd_emit_config);
  verb("baseline", "Headline numbers for a calibration", cmd_baseline);
  auto* solve = verb("solve", "Constrained reform optimum at a capability level", cmd_solve);
  solve->add_option("--gamma", opt.gamma, "AI capability level in [0,1]");
  verb("premises", "Check the four sign-reversal premises", cmd_premises);
  verb("sharpness", "Score ratio profile and the effort bound", cmd_sharpness);
  auto* rest = verb("restoration", "Best post-transition policy vs the pre-AI benchmark",
                    cmd_restoration);
  rest->add_option("--n-max", opt.n_max, "Largest panel size scanned");
  auto* sw = verb("sweep", "Comparative statics tables", cmd_sweep);
  sw->add_option("--parameter", opt.parameter, "R, V, sigma_s, N, gamma or all");
  sw->add_flag("--at-transition", opt.at_transition, "Evaluate at the transition effort only");
  sw->add_option("--gamma", opt.gamma, "Evaluate at a single capability level");
  auto* val = verb("validate", "Monte Carlo oracle suite", cmd_validate);
  val->add_option("--papers", opt.papers, "Papers per replicate");
  val->add_option("--replicates", opt.replicates, "Independent replicates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    for (auto& [sub, fn] : verbs) {
      if (sub->parsed()) return fn(opt);
    }
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const AssumptionViolation& e) {
    std::cerr << "assumption violated:\n";
    for (const auto& f : e.failures()) std::cerr << "  - " << f << "\n";
    return kAssumption;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kAssumption;
  } catch (const QuantileNonconvergence& e) {
    std::cerr << "solver did not converge: " << e.what() << "\n";
    return kNonconvergence;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kNonconvergence;
  } catch (const DegenerateRetention& e) {
    std::cerr << "degenerate retention: " << e.what() << "\n";
    return kNonconvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
