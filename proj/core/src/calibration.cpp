#include "peerreview/calibration.hpp"

#include <cmath>
#include <sstream>

#include "peerreview/errors.hpp"
#include "peerreview/numerics.hpp"

namespace peerreview {

namespace {

std::string join_failures(const std::vector<std::string>& failures) {
  std::ostringstream os;
  os << "assumption violation:";
  for (const auto& f : failures) os << "\n  - " << f;
  return os.str();
}

}  // namespace

AssumptionViolation::AssumptionViolation(std::vector<std::string> failures)
    : Error(join_failures(failures)), failures_(std::move(failures)) {}

std::string to_string(DensityMode mode) {
  return mode == DensityMode::gaussian_approx ? "gaussian_approx" : "exact_convolution";
}

DensityMode density_mode_from_string(const std::string& name) {
  if (name == "gaussian_approx") return DensityMode::gaussian_approx;
  if (name == "exact_convolution") return DensityMode::exact_convolution;
  throw ConfigError("unknown density_mode '" + name + "'");
}

double Calibration::reviewer_cost(double t) const {
  return cR_spec.c0 * std::pow(1.0 - t, cR_spec.exponent);
}

double Calibration::reviewer_cost_inverse(double x) const {
  if (x >= reviewer_cost(0.0)) return 0.0;
  if (x <= reviewer_cost(1.0)) return 1.0;
  if (cR_spec.is_linear()) return 1.0 - x / cR_spec.c0;
  // strictly decreasing: cost(t) - x changes sign once on [0, 1]
  return numerics::bisect([&](double t) { return reviewer_cost(t) - x; }, 0.0, 1.0, 1e-12);
}

double Calibration::polish_cost(double a) const {
  return kappa * std::pow(a, cA_spec.eta) / cA_spec.eta;
}

double Calibration::polish_marginal_cost(double a) const {
  if (cA_spec.is_quadratic()) return kappa * a;
  return kappa * std::pow(a, cA_spec.eta - 1.0);
}

double Calibration::polish_cost_curvature(double a) const {
  if (cA_spec.is_quadratic()) return kappa;
  return kappa * (cA_spec.eta - 1.0) * std::pow(a, cA_spec.eta - 2.0);
}

double Calibration::detection_cost(double p) const {
  return D_spec.d0 * p * p / (1.0 - p);
}

double Calibration::detection_marginal_cost(double p) const {
  const double q = 1.0 - p;
  return D_spec.d0 * p * (2.0 - p) / (q * q);
}

double Calibration::noise_variance(double effort_share) const {
  return effort_share * sigma_e * sigma_e + (1.0 - effort_share) * sigma_s * sigma_s;
}

Calibration baseline_calibration() { return Calibration{}; }

std::vector<std::string> assumption_failures(const Calibration& c) {
  std::vector<std::string> out;
  auto need = [&](bool ok, const char* what) {
    if (!ok) out.emplace_back(what);
  };

  for (double v : {c.V, c.beta, c.kappa, c.psi_alpha, c.R, c.ell, c.sigma_e, c.sigma_s,
                   c.epsilon, c.K0, c.cR_spec.c0, c.cR_spec.exponent, c.cA_spec.eta,
                   c.D_spec.d0}) {
    if (!std::isfinite(v)) {
      out.emplace_back("all parameters must be finite");
      return out;
    }
  }

  need(c.V > 0.0, "V > 0 (publication value)");
  need(c.beta > 0.0, "beta > 0 (polish weight)");
  need(c.kappa > 0.0, "kappa > 0 (polish cost scale)");
  need(c.psi_alpha > 0.0, "psi_alpha > 0 (appearance reward)");
  need(c.ell >= 0.0, "ell >= 0 (detection penalty)");
  need(c.epsilon >= 0.0, "epsilon >= 0 (invitation cost)");
  need(c.N >= 1, "N >= 1 (reviewers per paper)");
  need(c.K0 > 0.0 && c.K0 < 1.0, "0 < K0 < 1 (baseline acceptance rate)");

  // signal noise
  need(c.sigma_e > 0.0, "sigma_e > 0");
  need(c.sigma_s > c.sigma_e, "sigma_s > sigma_e (shirking reports are noisier)");

  // quality law: bounded support, strictly positive log-concave density
  for (auto& e : check_distribution(c.F_spec, "F (paper quality)")) out.push_back(e);

  // reviewer types on [0, 1]
  for (auto& e : check_distribution(c.G_spec, "G (reviewer type)")) out.push_back(e);
  need(c.G_spec.lower == 0.0 && c.G_spec.upper == 1.0, "G (reviewer type) supported on [0, 1]");

  // reviewer cost: continuous, strictly decreasing
  need(c.cR_spec.c0 > 0.0, "c_R: c0 > 0");
  need(c.cR_spec.exponent > 0.0, "c_R: exponent > 0 (strictly decreasing)");
  need(c.R < 0.0, "R < 0 (accepting an invitation is costly)");
  need(c.R + c.psi_alpha > 0.0, "R + psi_alpha > 0");
  if (c.cR_spec.c0 > 0.0 && c.cR_spec.exponent > 0.0) {
    const double x = c.R + c.psi_alpha;
    need(c.reviewer_cost(1.0) < x && x < c.reviewer_cost(0.0),
         "c_R(1) < R + psi_alpha < c_R(0)");
  }

  // polish cost: strictly convex, c_A(0) = c_A'(0) = 0
  need(c.cA_spec.eta > 1.0, "c_A: exponent eta > 1 (strictly convex, c_A'(0) = 0)");

  // detection cost d0 p^2/(1-p): D(0) = D'(0) = 0, convex, D' -> inf
  need(c.D_spec.d0 > 0.0, "D: d0 > 0");

  const auto& s = c.solver;
  need(s.K_min > 0.0 && s.K_max < 1.0 && s.K_min < s.K_max, "solver: 0 < K_min < K_max < 1");
  need(s.K_step > 0.0 && s.p_step > 0.0, "solver: grid steps > 0");
  need(s.p_max >= 0.0 && s.p_max < 1.0, "solver: 0 <= p_max < 1");
  need(s.N_max >= 1, "solver: N_max >= 1");
  need(s.lambda_delta > 0.0 && s.fd_rel_step > 0.0, "solver: finite-difference steps > 0");
  need(s.m_grid_points >= 2 && s.m_grid_min > 0.0 && s.m_grid_min < 1.0,
       "solver: score-ratio grid needs >= 2 points in (0, 1]");
  return out;
}

Calibration validate(const Calibration& raw) {
  auto failures = assumption_failures(raw);
  if (!failures.empty()) throw AssumptionViolation(std::move(failures));
  return raw;
}

Calibration calibrate_reviewer_cost(const Calibration& cal, double target_m1) {
  if (cal.G_spec != DistributionSpec::uniform(0.0, 1.0) || !cal.cR_spec.is_linear()) {
    throw Infeasible("calibrate_reviewer_cost: needs uniform G on [0, 1] and linear c_R");
  }
  if (!(target_m1 > 0.0 && target_m1 < 1.0)) {
    throw Infeasible("calibrate_reviewer_cost: target effort rate must lie in (0, 1), got " +
                     std::to_string(target_m1));
  }
  Calibration out = cal;
  // m1 = 1 - t_tilde(gamma1, 0) with t_tilde = 1 - (psi_alpha + R) / c0
  out.cR_spec.c0 = (cal.psi_alpha + cal.R) / target_m1;
  const double x = out.R + out.psi_alpha;
  if (!(out.reviewer_cost(1.0) < x && x < out.reviewer_cost(0.0))) {
    throw Infeasible("calibrate_reviewer_cost: c0 = " + std::to_string(out.cR_spec.c0) +
                     " violates c_R(1) < R + psi_alpha < c_R(0)");
  }
  return out;
}

}  // namespace peerreview
