#include "peerreview/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "peerreview/errors.hpp"

namespace peerreview::config {

using nlohmann::json;

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) throw ConfigError("unknown key '" + where + it.key() + "'");
  }
}

double get_real(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("'" + where + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  throw ConfigError("'" + where + key + "' must be an integer");
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError("'" + where + key + "' must be a string");
  return v.get<std::string>();
}

const json& get_object(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_object()) throw ConfigError(std::string("'") + key + "' must be an object");
  return v;
}

DistributionSpec parse_distribution(const json& j, DistributionSpec base, const std::string& where) {
  reject_unknown(j, {"family", "parameters", "lower", "upper"}, where);
  DistributionSpec d = base;
  if (j.contains("family")) {
    const auto fam = family_from_string(get_string(j, "family", "", where));
    if (fam != d.family) d.parameters.clear();
    d.family = fam;
  }
  if (j.contains("parameters")) {
    const auto& p = j.at("parameters");
    if (!p.is_array()) throw ConfigError("'" + where + "parameters' must be an array");
    d.parameters.clear();
    for (const auto& x : p) {
      if (!x.is_number()) throw ConfigError("'" + where + "parameters' must hold numbers");
      d.parameters.push_back(x.get<double>());
    }
  }
  d.lower = get_real(j, "lower", d.lower, where);
  d.upper = get_real(j, "upper", d.upper, where);
  return d;
}

json distribution_json(const DistributionSpec& d) {
  json p = json::array();
  for (double x : d.parameters) p.push_back(round_sig(x));
  return json{{"family", to_string(d.family)},
              {"parameters", p},
              {"lower", round_sig(d.lower)},
              {"upper", round_sig(d.upper)}};
}

std::string score_ratio_mode_name(ScoreRatioMode m) {
  return m == ScoreRatioMode::exact_convolution ? "exact_convolution" : "gaussian_approx";
}

Calibration from_json_value(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  reject_unknown(j,
                 {"V", "beta", "kappa", "psi_alpha", "R", "ell", "sigma_e", "sigma_s", "epsilon",
                  "N", "K0", "F_spec", "G_spec", "cR_spec", "cA_spec", "D_spec", "density_mode",
                  "solver"},
                 "");
  Calibration c = baseline_calibration();
  c.V = get_real(j, "V", c.V, "");
  c.beta = get_real(j, "beta", c.beta, "");
  c.kappa = get_real(j, "kappa", c.kappa, "");
  c.psi_alpha = get_real(j, "psi_alpha", c.psi_alpha, "");
  c.R = get_real(j, "R", c.R, "");
  c.ell = get_real(j, "ell", c.ell, "");
  c.sigma_e = get_real(j, "sigma_e", c.sigma_e, "");
  c.sigma_s = get_real(j, "sigma_s", c.sigma_s, "");
  c.epsilon = get_real(j, "epsilon", c.epsilon, "");
  c.N = get_int(j, "N", c.N, "");
  c.K0 = get_real(j, "K0", c.K0, "");
  if (j.contains("density_mode")) {
    c.density_mode = density_mode_from_string(get_string(j, "density_mode", "", ""));
  }
  if (j.contains("F_spec")) c.F_spec = parse_distribution(get_object(j, "F_spec"), c.F_spec, "F_spec.");
  if (j.contains("G_spec")) c.G_spec = parse_distribution(get_object(j, "G_spec"), c.G_spec, "G_spec.");
  if (j.contains("cR_spec")) {
    const auto& o = get_object(j, "cR_spec");
    reject_unknown(o, {"family", "c0", "exponent"}, "cR_spec.");
    c.cR_spec.c0 = get_real(o, "c0", c.cR_spec.c0, "cR_spec.");
    const auto fam = get_string(o, "family", c.cR_spec.is_linear() ? "linear" : "power", "cR_spec.");
    if (fam == "linear") {
      if (o.contains("exponent") && get_real(o, "exponent", 1.0, "cR_spec.") != 1.0) {
        throw ConfigError("'cR_spec.exponent' must be 1 for the linear family");
      }
      c.cR_spec.exponent = 1.0;
    } else if (fam == "power") {
      c.cR_spec.exponent = get_real(o, "exponent", c.cR_spec.exponent, "cR_spec.");
    } else {
      throw ConfigError("unknown cR_spec.family '" + fam + "'");
    }
  }
  if (j.contains("cA_spec")) {
    const auto& o = get_object(j, "cA_spec");
    reject_unknown(o, {"family", "eta"}, "cA_spec.");
    const auto fam = get_string(o, "family", c.cA_spec.is_quadratic() ? "quadratic" : "power", "cA_spec.");
    if (fam == "quadratic") {
      if (o.contains("eta") && get_real(o, "eta", 2.0, "cA_spec.") != 2.0) {
        throw ConfigError("'cA_spec.eta' must be 2 for the quadratic family");
      }
      c.cA_spec.eta = 2.0;
    } else if (fam == "power") {
      c.cA_spec.eta = get_real(o, "eta", c.cA_spec.eta, "cA_spec.");
    } else {
      throw ConfigError("unknown cA_spec.family '" + fam + "'");
    }
  }
  if (j.contains("D_spec")) {
    const auto& o = get_object(j, "D_spec");
    reject_unknown(o, {"family", "d0"}, "D_spec.");
    const auto fam = get_string(o, "family", "quadratic_ratio", "D_spec.");
    if (fam != "quadratic_ratio") throw ConfigError("unknown D_spec.family '" + fam + "'");
    c.D_spec.d0 = get_real(o, "d0", c.D_spec.d0, "D_spec.");
  }
  if (j.contains("solver")) {
    const auto& o = get_object(j, "solver");
    reject_unknown(o,
                   {"K_min", "K_max", "K_step", "p_max", "p_step", "N_max", "lambda_delta",
                    "fd_rel_step", "m_grid_points", "m_grid_min", "score_ratio_mode"},
                   "solver.");
    auto& s = c.solver;
    s.K_min = get_real(o, "K_min", s.K_min, "solver.");
    s.K_max = get_real(o, "K_max", s.K_max, "solver.");
    s.K_step = get_real(o, "K_step", s.K_step, "solver.");
    s.p_max = get_real(o, "p_max", s.p_max, "solver.");
    s.p_step = get_real(o, "p_step", s.p_step, "solver.");
    s.N_max = get_int(o, "N_max", s.N_max, "solver.");
    s.lambda_delta = get_real(o, "lambda_delta", s.lambda_delta, "solver.");
    s.fd_rel_step = get_real(o, "fd_rel_step", s.fd_rel_step, "solver.");
    s.m_grid_points = get_int(o, "m_grid_points", s.m_grid_points, "solver.");
    s.m_grid_min = get_real(o, "m_grid_min", s.m_grid_min, "solver.");
    if (o.contains("score_ratio_mode")) {
      const auto name = get_string(o, "score_ratio_mode", "", "solver.");
      if (name == "exact_convolution") s.score_ratio_mode = ScoreRatioMode::exact_convolution;
      else if (name == "gaussian_approx") s.score_ratio_mode = ScoreRatioMode::gaussian_approx;
      else throw ConfigError("unknown solver.score_ratio_mode '" + name + "'");
    }
  }
  return c;
}

json to_json_value(const Calibration& c) {
  const auto& s = c.solver;
  return json{
      {"V", round_sig(c.V)},
      {"beta", round_sig(c.beta)},
      {"kappa", round_sig(c.kappa)},
      {"psi_alpha", round_sig(c.psi_alpha)},
      {"R", round_sig(c.R)},
      {"ell", round_sig(c.ell)},
      {"sigma_e", round_sig(c.sigma_e)},
      {"sigma_s", round_sig(c.sigma_s)},
      {"epsilon", round_sig(c.epsilon)},
      {"N", c.N},
      {"K0", round_sig(c.K0)},
      {"density_mode", to_string(c.density_mode)},
      {"F_spec", distribution_json(c.F_spec)},
      {"G_spec", distribution_json(c.G_spec)},
      {"cR_spec", {{"family", c.cR_spec.is_linear() ? "linear" : "power"},
                   {"c0", round_sig(c.cR_spec.c0)},
                   {"exponent", round_sig(c.cR_spec.exponent)}}},
      {"cA_spec", {{"family", c.cA_spec.is_quadratic() ? "quadratic" : "power"},
                   {"eta", round_sig(c.cA_spec.eta)}}},
      {"D_spec", {{"family", "quadratic_ratio"}, {"d0", round_sig(c.D_spec.d0)}}},
      {"solver", {{"K_min", round_sig(s.K_min)},
                  {"K_max", round_sig(s.K_max)},
                  {"K_step", round_sig(s.K_step)},
                  {"p_max", round_sig(s.p_max)},
                  {"p_step", round_sig(s.p_step)},
                  {"N_max", s.N_max},
                  {"lambda_delta", round_sig(s.lambda_delta)},
                  {"fd_rel_step", round_sig(s.fd_rel_step)},
                  {"m_grid_points", s.m_grid_points},
                  {"m_grid_min", round_sig(s.m_grid_min)},
                  {"score_ratio_mode", score_ratio_mode_name(s.score_ratio_mode)}}},
  };
}

}  // namespace

Calibration from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return from_json_value(j);
}

Calibration load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string to_json(const Calibration& cal) { return to_json_value(cal).dump(2) + "\n"; }

void apply_override(Calibration& cal, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare word, e.g. density_mode=exact_convolution
  }

  json doc = to_json_value(cal);
  json* node = &doc;
  std::string path;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    path += part;
    if (!node->is_object() || !node->contains(part)) {
      throw ConfigError("unknown override key '" + path + "'");
    }
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    path += '.';
    start = dot + 1;
  }
  *node = value;
  cal = from_json_value(doc);
}

}  // namespace peerreview::config
