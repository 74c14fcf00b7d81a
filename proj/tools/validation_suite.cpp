#include "validation_suite.hpp"

#include <cmath>
#include <cstdio>

#include "peerreview/author_game.hpp"
#include "peerreview/editor_objective.hpp"
#include "peerreview/signal_model.hpp"

namespace peerreview::tools {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

struct Config {
  int N;
  double K;
  double p_det;
  double m;
};

const Config kConfigs[] = {{2, 0.3, 0.0, 1.0}, {2, 0.3, 0.0, 0.125}, {1, 0.1, 0.5, 0.5},
                           {20, 0.5, 0.3, 0.125}};

}  // namespace

std::vector<ValidationLine> run_validation(const Calibration& cal, const mc::SimConfig& base) {
  std::vector<ValidationLine> out;

  for (const auto& c : kConfigs) {
    const editor::Policy policy{c.N, c.K, c.p_det};
    const auto model = signal::retained_model(c.m, c.p_det, static_cast<double>(c.N), cal);
    char tag[96];
    std::snprintf(tag, sizeof tag, "N=%d K=%.2f p_det=%.2f m=%.3f", c.N, c.K, c.p_det, c.m);

    for (auto law : {mc::QualityLaw::calibration, mc::QualityLaw::moment_matched_normal}) {
      mc::SimConfig sim = base;
      sim.quality_law = law;
      const bool exact = law == mc::QualityLaw::calibration;
      const double Q = editor::sorting_quality(
          model.M, model.N_ret, c.K, cal,
          exact ? DensityMode::exact_convolution : DensityMode::gaussian_approx);
      Calibration mode_cal = cal;
      mode_cal.density_mode = exact ? DensityMode::exact_convolution : DensityMode::gaussian_approx;
      const double a = author::equilibrium_polish(c.m, c.K, c.p_det, c.N, mode_cal).a_star;
      const auto r = mc::simulate(policy, c.m, a, cal, sim);
      out.push_back({std::string("Q in 99% CI (") + (exact ? "theta~F" : "normal theta") + ") " + tag,
                     fmt("%.5f +- %.5f", r.Q_hat.mean, r.Q_hat.ci_half_width()), fmt("%.5f", Q),
                     r.Q_hat.covers(Q)});
    }

    const auto acc = mc::acceptance_probability_check(policy, c.m, cal, base);
    out.push_back({std::string("tagged acceptance = K ") + tag,
                   fmt("%.5f (se %.5f)", acc.mean, acc.se), fmt("%.5f", c.K),
                   acc.within_se(c.K, 3.0)});

    const auto foc = mc::foc_consistency(policy, c.m, cal, base);
    out.push_back({std::string("V dPr/da = c_A'(a*) ") + tag,
                   fmt("%.5f (se %.5f)", foc.marginal_value.mean, foc.marginal_value.se),
                   fmt("%.5f", foc.marginal_cost), foc.consistent});
  }

  {
    const editor::Policy policy{2, 0.3, 0.0};
    const auto probe = mc::cohort_acceptance(policy, 1.0, 0.1, cal, base);
    out.push_back({"cohort at a*+0.1 accepted more often", fmt("%.5f (se %.5f)", probe.mean, probe.se),
                   "> 0.30000", probe.mean - 3.0 * probe.se > 0.3});
  }
  {
    const auto r = mc::simulate({2, 0.3, 0.0}, 0.0, 0.0, cal, base);
    const double mu = cal.quality().mean();
    out.push_back({"noise-only acceptance (m=0)", fmt("%.5f +- %.5f", r.Q_hat.mean, r.Q_hat.ci_half_width()),
                   fmt("%.5f", mu), r.Q_hat.covers(mu)});
  }
  {
    const auto r = mc::simulate({2, 0.3, 0.9}, 0.125, 0.0, cal, base);
    const double expected = 2.0 * (0.125 + 0.875 * 0.1);
    out.push_back({"retained reports under thinning (p_det=0.9, m=0.125)",
                   fmt("%.5f +- %.5f", r.mean_retained.mean, r.mean_retained.ci_half_width()),
                   fmt("%.5f", expected), r.mean_retained.covers(expected)});
  }
  {
    const auto e = mc::composition_approximation_error({2, 0.3, 0.0}, 1.0, cal, base);
    out.push_back({"composition error at m=1", fmt("%.3g", e.abs_error), "0", e.abs_error == 0.0});
  }
  {
    const auto e2 = mc::composition_approximation_error({2, 0.3, 0.0}, 0.125, cal, base);
    const double lift = e2.Q_deterministic.mean - cal.quality().mean();
    out.push_back({"composition error < 50% of sorting lift (N=2, m=0.125)",
                   fmt("%.5f (lift %.5f)", e2.abs_error, lift), fmt("< %.5f", 0.5 * lift),
                   e2.abs_error < 0.5 * lift});
    const auto e50 = mc::composition_approximation_error({50, 0.3, 0.0}, 0.125, cal, base);
    out.push_back({"composition error N=50 vs N=2 (m=0.125), reported",
                   fmt("%.5f vs %.5f", e50.abs_error, e2.abs_error), "smaller at N=50",
                   e50.abs_error < e2.abs_error, true});
  }
  return out;
}

void print_table(std::ostream& os, const std::vector<ValidationLine>& lines) {
  for (const auto& l : lines) {
    const char* status = l.informational ? (l.pass ? "info" : "INFO") : (l.pass ? "PASS" : "FAIL");
    os << status << "  " << l.check << "\n      observed " << l.observed << "  expected "
       << l.expected << "\n";
  }
}

}  // namespace peerreview::tools
