#include "peerreview/author_game.hpp"

#include <cmath>

#include "peerreview/errors.hpp"
#include "peerreview/numerics.hpp"
#include "peerreview/signal_model.hpp"

namespace peerreview::author {

namespace {

struct Foc {
  double M = 0.0;
  double h = 0.0;
  double h_prime = 0.0;
  double marginal_return = 0.0;  ///< V beta M h
};

Foc first_order_terms(double m, double K, double p_det, double panel_size,
                      const Calibration& cal) {
  const auto model = signal::retained_model(m, p_det, panel_size, cal);
  const auto td = signal::threshold_and_density(model.M, model.sigma_eff, K, cal);
  return {model.M, td.h, td.h_prime, cal.V * cal.beta * model.M * td.h};
}

double solve_marginal_cost(double target, const Calibration& cal) {
  if (target <= 0.0) return 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && cal.polish_marginal_cost(hi) < target; ++i) hi *= 2.0;
  return numerics::bisect([&](double a) { return cal.polish_marginal_cost(a) - target; }, 0.0,
                          hi, 1e-14 * std::max(1.0, hi), 400);
}

AuthorEquilibrium assemble(double a, double m, double K, const Foc& foc, const Calibration& cal) {
  AuthorEquilibrium eq;
  eq.a_star = a;
  eq.dissipation = cal.polish_cost(a);
  eq.U_A = K * cal.V - eq.dissipation;
  eq.marginal_density = foc.h;
  eq.Lambda = m * foc.h;
  eq.M_eff = foc.M;
  return eq;
}

}  // namespace

AuthorEquilibrium equilibrium_polish(double m, double K, double p_det, double panel_size,
                                     const Calibration& cal) {
  const auto foc = first_order_terms(m, K, p_det, panel_size, cal);
  const double a = cal.cA_spec.is_quadratic() ? foc.marginal_return / cal.kappa
                                              : solve_marginal_cost(foc.marginal_return, cal);
  return assemble(a, m, K, foc, cal);
}

AuthorEquilibrium equilibrium_polish(double m, double K, double p_det, const Calibration& cal) {
  return equilibrium_polish(m, K, p_det, static_cast<double>(cal.N), cal);
}

AuthorEquilibrium equilibrium_polish_root(double m, double K, double p_det, double panel_size,
                                          const Calibration& cal) {
  const auto foc = first_order_terms(m, K, p_det, panel_size, cal);
  return assemble(solve_marginal_cost(foc.marginal_return, cal), m, K, foc, cal);
}

PolishSensitivities polish_sensitivities(double m, double K, double p_det, double panel_size,
                                         const Calibration& cal) {
  const auto foc = first_order_terms(m, K, p_det, panel_size, cal);
  const auto eq = equilibrium_polish(m, K, p_det, panel_size, cal);
  PolishSensitivities out;
  // dz/dK = -1/h, so d(V beta M h(z))/dK = -V beta M h'/h
  const double curvature = cal.polish_cost_curvature(eq.a_star);
  out.dA_dK = eq.a_star > 0.0 || cal.cA_spec.is_quadratic()
                  ? -cal.V * cal.beta * foc.M * foc.h_prime / (foc.h * curvature)
                  : 0.0;
  const double step = cal.solver.fd_rel_step;
  out.dA_dp = numerics::central_difference(
      [&](double p) { return equilibrium_polish(m, K, p, panel_size, cal).a_star; }, p_det, step);
  out.dA_dN = numerics::central_difference(
      [&](double n) { return equilibrium_polish(m, K, p_det, n, cal).a_star; }, panel_size, step);
  return out;
}

PolishSensitivities polish_sensitivities(double m, double K, double p_det,
                                         const Calibration& cal) {
  return polish_sensitivities(m, K, p_det, static_cast<double>(cal.N), cal);
}

LeverageDiagnostic leverage_diagnostic(double K, double p_det, double panel_size,
                                       const Calibration& cal, int grid_points) {
  LeverageDiagnostic out;
  double previous = 0.0;
  for (int i = 1; i <= grid_points; ++i) {
    const double m = static_cast<double>(i) / grid_points;
    const double lambda = equilibrium_polish(m, K, p_det, panel_size, cal).Lambda;
    if (i > 1 && lambda < previous) {
      out.monotone = false;
      if (previous - lambda > out.worst_drop) {
        out.worst_drop = previous - lambda;
        out.at_m = m;
      }
    }
    previous = lambda;
  }
  return out;
}

}  // namespace peerreview::author
