#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "peerreview/calibration.hpp"
#include "peerreview/editor_objective.hpp"

namespace peerreview::mc {

/// Law used to draw latent quality in the simulator.
enum class QualityLaw {
  calibration,            ///< theta ~ F exactly
  moment_matched_normal,  ///< theta ~ N(E[theta], Var(theta)); the law behind
                          ///< the Gaussian-approximation formulas
};

struct SimConfig {
  std::int64_t papers = 100000;
  std::uint64_t seed = 20240611;
  bool stochastic_composition = false;  ///< Bernoulli(m) effort per invited reviewer
  int replicates = 20;
  QualityLaw quality_law = QualityLaw::calibration;
  unsigned threads = 0;                 ///< 0 = default_thread_count()
};

/// Replicate mean with its standard error across replicates.
struct Estimate {
  double mean = 0.0;
  double se = 0.0;
  int replicates = 0;

  /// Two-sided Student-t confidence interval half width.
  double ci_half_width(double level = 0.99) const;
  bool covers(double value, double level = 0.99) const;
  bool within_se(double value, double k) const;
};

Estimate summarize(const std::vector<double>& per_replicate);

struct SimResult {
  Estimate Q_hat;
  /// polish deviation of a tagged cohort -> that cohort's acceptance rate
  std::map<double, Estimate> accept_rate_by_polish;
  Estimate U_A_hat;          ///< V * acceptance rate - c_A(a) for a base-polish author
  Estimate mean_retained;    ///< retained reports per paper
  Estimate zero_retained_share;
  std::vector<double> retained_count_share;  ///< share of papers with 0..N retained reports
  std::optional<double> composition_error;
};

/// Agent-level simulation of one policy. Every author polishes `a_polish`,
/// except tagged cohorts (paper index mod 16 == j) which polish
/// a_polish + probes[j]. Draws share counter-based streams keyed on
/// (seed, replicate, block), so identical configs give identical results and
/// paired runs use common random numbers. At most 16 probes.
SimResult simulate(const editor::Policy& policy, double m, double a_polish,
                   const Calibration& cal, const SimConfig& sim,
                   const std::vector<double>& probes = {});

/// Acceptance rate of a tagged cohort when everyone plays the symmetric
/// equilibrium polish. Should equal K.
Estimate acceptance_probability_check(const editor::Policy& policy, double m,
                                      const Calibration& cal, const SimConfig& sim);

/// Same, with the tagged cohort polishing a* + deviation.
Estimate cohort_acceptance(const editor::Policy& policy, double m, double deviation,
                           const Calibration& cal, const SimConfig& sim);

/// d Pr(accept)/da for a single author deviating from the symmetric polish
/// `a_polish`: each paper's signal is re-scored at a +- delta against the
/// realized population threshold (central difference, common draws).
Estimate marginal_acceptance_gain(const editor::Policy& policy, double m, double a_polish,
                                  const Calibration& cal, const SimConfig& sim,
                                  double delta = 0.05);

struct FocCheck {
  Estimate marginal_value;   ///< V * simulated d Pr(accept)/da at a*
  double marginal_cost = 0.0;  ///< c_A'(a*)
  double a_star = 0.0;
  bool consistent = false;   ///< |difference| <= 3 SE
};

FocCheck foc_consistency(const editor::Policy& policy, double m, const Calibration& cal,
                         const SimConfig& sim);

struct CompositionError {
  Estimate Q_deterministic;
  Estimate Q_stochastic;
  Estimate error;      ///< paired difference stochastic - deterministic
  double abs_error = 0.0;
};

/// Paired runs (common random numbers) with deterministic vs Binomial effort
/// composition.
CompositionError composition_approximation_error(const editor::Policy& policy, double m,
                                                 const Calibration& cal, const SimConfig& sim);

}  // namespace peerreview::mc
