#pragma once

#include "peerreview/calibration.hpp"

namespace peerreview::author {

/// Symmetric rat-race equilibrium.
struct AuthorEquilibrium {
  double a_star = 0.0;
  double dissipation = 0.0;       ///< c_A(a*)
  double U_A = 0.0;               ///< K V - c_A(a*)
  double marginal_density = 0.0;  ///< threshold density of the polish-free aggregate
  double Lambda = 0.0;            ///< m * marginal_density
  double M_eff = 0.0;             ///< effort share polish acts through
};

/// Equilibrium polish for a panel of `panel_size` reviewers. The threshold
/// density does not depend on symmetric polish, so the first-order condition
/// c_A'(a) = V beta M h is a one-dimensional root (closed form when cost is
/// quadratic).
AuthorEquilibrium equilibrium_polish(double m, double K, double p_det, double panel_size,
                                     const Calibration& cal);
AuthorEquilibrium equilibrium_polish(double m, double K, double p_det, const Calibration& cal);

/// Same equilibrium, always solved with the bracketed root finder.
AuthorEquilibrium equilibrium_polish_root(double m, double K, double p_det,
                                          double panel_size, const Calibration& cal);

struct PolishSensitivities {
  double dA_dK = 0.0;  ///< closed form -V beta M h'/(h c_A''(a*))
  double dA_dp = 0.0;  ///< central difference
  double dA_dN = 0.0;  ///< central difference in the (real) panel size
};

PolishSensitivities polish_sensitivities(double m, double K, double p_det, double panel_size,
                                         const Calibration& cal);
PolishSensitivities polish_sensitivities(double m, double K, double p_det,
                                         const Calibration& cal);

/// Checks that Lambda(m) = m h(z(m, K)) is nondecreasing on an m-grid.
struct LeverageDiagnostic {
  bool monotone = true;
  double worst_drop = 0.0;   ///< largest decrease between neighbouring grid points
  double at_m = 0.0;
};

LeverageDiagnostic leverage_diagnostic(double K, double p_det, double panel_size,
                                       const Calibration& cal, int grid_points = 20);

}  // namespace peerreview::author
