#include "peerreview/mc_validator.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "peerreview/author_game.hpp"
#include "peerreview/distribution.hpp"
#include "peerreview/numerics.hpp"
#include "peerreview/parallel.hpp"
#include "peerreview/signal_model.hpp"

namespace peerreview::mc {

namespace {

constexpr std::size_t kBlock = 4096;
constexpr std::size_t kCohorts = 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Engine for one (seed, replicate, block) stream.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t block) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ (replicate + 0x632BE59BD9B4E019ULL));
  s = splitmix64(s ^ (block + 0x85157AF5ULL));
  return std::mt19937_64(s);
}

/// Uniform on the open interval (0, 1); one engine call.
double uniform(std::mt19937_64& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normals in pairs (Box-Muller): consumption is fixed per call.
void normals(std::mt19937_64& eng, std::vector<double>& out) {
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const double r = std::sqrt(-2.0 * std::log(uniform(eng)));
    const double t = 2.0 * std::numbers::pi * uniform(eng);
    out[i] = r * std::cos(t);
    if (i + 1 < out.size()) out[i + 1] = r * std::sin(t);
  }
}

struct Population {
  std::vector<double> theta;
  std::vector<double> signal;
  std::vector<double> loading;  ///< d signal / d polish, divided by beta
  std::vector<int> retained;
  std::vector<double> deviation;
};

struct Setup {
  const editor::Policy& policy;
  double m;
  double a_polish;
  const Calibration& cal;
  const SimConfig& sim;
  const std::vector<double>& probes;
};

Population draw_population(const Setup& st, std::uint64_t replicate) {
  const auto& cal = st.cal;
  const auto n = static_cast<std::size_t>(st.sim.papers);
  const int N = st.policy.N;
  const double p = st.policy.p_det;
  const auto model = signal::retained_model(st.m, p, static_cast<double>(N), cal);
  const Distribution F = cal.quality();
  const double mu = F.mean();
  const double sd = std::sqrt(F.variance());
  const bool normal_law = st.sim.quality_law == QualityLaw::moment_matched_normal;

  Population pop;
  pop.theta.resize(n);
  pop.signal.resize(n);
  pop.loading.resize(n);
  pop.retained.resize(n);
  pop.deviation.resize(n);

  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  const unsigned threads = st.sim.threads == 0 ? default_thread_count() : st.sim.threads;
  parallel_for(blocks, [&](std::size_t b) {
    auto eng = stream(st.sim.seed, replicate, b);
    std::vector<double> z(static_cast<std::size_t>(N) + 2);
    std::vector<double> u_effort(static_cast<std::size_t>(N));
    std::vector<double> u_retain(static_cast<std::size_t>(N));
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const double u_theta = uniform(eng);
      normals(eng, z);
      for (auto& u : u_effort) u = uniform(eng);
      for (auto& u : u_retain) u = uniform(eng);

      const std::size_t cohort = i % kCohorts;
      const double dev = cohort < st.probes.size() ? st.probes[cohort] : 0.0;
      const double theta = normal_law ? mu + sd * numerics::normal_quantile(u_theta)
                                      : F.quantile(u_theta);
      const double a = st.a_polish + dev;

      int kept = 0;
      int kept_effort = 0;
      for (int r = 0; r < N; ++r) {
        const bool effort = u_effort[r] < st.m;
        if (!effort && u_retain[r] < p) continue;
        ++kept;
        kept_effort += effort;
      }
      double zbar = 0.0;
      for (int r = 0; r < N; ++r) zbar += z[r];
      zbar /= std::sqrt(static_cast<double>(N));

      // Given the retained composition, the summed report noise is normal
      // with the pooled variance, so one standard normal carries it.
      double s = 0.0;
      double load = 0.0;
      if (!st.sim.stochastic_composition) {
        load = model.M;
        s = load * (theta + cal.beta * a) + model.sigma_eff * zbar;
      } else if (kept > 0) {
        load = static_cast<double>(kept_effort) / kept;
        s = load * (theta + cal.beta * a) + std::sqrt(cal.noise_variance(load) / kept) * zbar;
      } else {
        s = cal.sigma_s * z[static_cast<std::size_t>(N)];
      }
      pop.theta[i] = theta;
      pop.signal[i] = s;
      pop.loading[i] = load;
      pop.retained[i] = kept;
      pop.deviation[i] = dev;
    }
  }, threads);
  return pop;
}

/// Value of the k-th largest signal; papers at or above it are accepted.
double acceptance_threshold(const std::vector<double>& signal, double K) {
  const std::size_t n = signal.size();
  auto k = static_cast<std::size_t>(std::llround(K * static_cast<double>(n)));
  k = std::clamp<std::size_t>(k, 1, n);
  std::vector<double> copy(signal);
  auto nth = copy.begin() + static_cast<std::ptrdiff_t>(n - k);
  std::nth_element(copy.begin(), nth, copy.end());
  return *nth;
}

void check_config(const editor::Policy& policy, double m, const SimConfig& sim,
                  const std::vector<double>& probes) {
  if (sim.papers < 16) throw std::invalid_argument("simulate: need at least 16 papers");
  if (sim.replicates < 1) throw std::invalid_argument("simulate: need at least one replicate");
  if (probes.size() > kCohorts) throw std::invalid_argument("simulate: at most 16 probes");
  if (policy.N < 1) throw std::invalid_argument("simulate: panel size must be positive");
  if (!(policy.K > 0.0 && policy.K < 1.0)) throw std::invalid_argument("simulate: K in (0,1)");
  if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("simulate: m in [0,1]");
}

struct RawRun {
  std::vector<double> Q;
  std::map<double, std::vector<double>> accept_by_probe;
  std::vector<double> U_A;
  std::vector<double> mean_retained;
  std::vector<double> zero_share;
  std::vector<std::vector<double>> count_share;
};

RawRun run(const Setup& st) {
  check_config(st.policy, st.m, st.sim, st.probes);
  const int N = st.policy.N;
  RawRun raw;
  for (int r = 0; r < st.sim.replicates; ++r) {
    const auto pop = draw_population(st, static_cast<std::uint64_t>(r));
    const double t = acceptance_threshold(pop.signal, st.policy.K);
    const std::size_t n = pop.signal.size();

    double q_sum = 0.0;
    std::size_t accepted = 0;
    std::vector<double> acc(kCohorts, 0.0), tot(kCohorts, 0.0);
    double base_acc = 0.0, base_tot = 0.0;
    double kept_sum = 0.0;
    std::vector<double> counts(static_cast<std::size_t>(N) + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const bool in = pop.signal[i] >= t;
      if (in) {
        q_sum += pop.theta[i];
        ++accepted;
      }
      acc[i % kCohorts] += in;
      tot[i % kCohorts] += 1.0;
      if (pop.deviation[i] == 0.0) {
        base_acc += in;
        base_tot += 1.0;
      }
      kept_sum += pop.retained[i];
      counts[static_cast<std::size_t>(pop.retained[i])] += 1.0;
    }
    raw.Q.push_back(q_sum / static_cast<double>(accepted));
    for (std::size_t j = 0; j < st.probes.size(); ++j) {
      raw.accept_by_probe[st.probes[j]].push_back(acc[j] / tot[j]);
    }
    const double rate = base_tot > 0.0 ? base_acc / base_tot
                                       : static_cast<double>(accepted) / static_cast<double>(n);
    raw.U_A.push_back(st.cal.V * rate - st.cal.polish_cost(st.a_polish));
    raw.mean_retained.push_back(kept_sum / static_cast<double>(n));
    for (auto& c : counts) c /= static_cast<double>(n);
    raw.zero_share.push_back(counts[0]);
    raw.count_share.push_back(std::move(counts));
  }
  return raw;
}

double equilibrium_a(const editor::Policy& policy, double m, const Calibration& cal,
                     const SimConfig& sim) {
  // the density that is exact for the simulated quality law
  Calibration c = cal;
  c.density_mode = sim.quality_law == QualityLaw::calibration ? DensityMode::exact_convolution
                                                              : DensityMode::gaussian_approx;
  return author::equilibrium_polish(m, policy.K, policy.p_det, static_cast<double>(policy.N), c)
      .a_star;
}

}  // namespace

double Estimate::ci_half_width(double level) const {
  if (replicates < 2) return std::numeric_limits<double>::infinity();
  boost::math::students_t dist(static_cast<double>(replicates - 1));
  return boost::math::quantile(dist, 0.5 + 0.5 * level) * se;
}

bool Estimate::covers(double value, double level) const {
  return std::abs(mean - value) <= ci_half_width(level);
}

bool Estimate::within_se(double value, double k) const {
  return std::abs(mean - value) <= k * se;
}

Estimate summarize(const std::vector<double>& xs) {
  Estimate e;
  e.replicates = static_cast<int>(xs.size());
  if (xs.empty()) return e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return e;
}

SimResult simulate(const editor::Policy& policy, double m, double a_polish,
                   const Calibration& cal, const SimConfig& sim,
                   const std::vector<double>& probes) {
  const auto raw = run(Setup{policy, m, a_polish, cal, sim, probes});
  SimResult out;
  out.Q_hat = summarize(raw.Q);
  for (const auto& [probe, xs] : raw.accept_by_probe) out.accept_rate_by_polish[probe] = summarize(xs);
  out.U_A_hat = summarize(raw.U_A);
  out.mean_retained = summarize(raw.mean_retained);
  out.zero_retained_share = summarize(raw.zero_share);
  out.retained_count_share.assign(raw.count_share.front().size(), 0.0);
  for (const auto& row : raw.count_share) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out.retained_count_share[k] += row[k] / static_cast<double>(raw.count_share.size());
    }
  }
  return out;
}

Estimate acceptance_probability_check(const editor::Policy& policy, double m,
                                      const Calibration& cal, const SimConfig& sim) {
  return cohort_acceptance(policy, m, 0.0, cal, sim);
}

Estimate cohort_acceptance(const editor::Policy& policy, double m, double deviation,
                           const Calibration& cal, const SimConfig& sim) {
  const double a = equilibrium_a(policy, m, cal, sim);
  const std::vector<double> probes{deviation};
  const auto raw = run(Setup{policy, m, a, cal, sim, probes});
  return summarize(raw.accept_by_probe.at(deviation));
}

Estimate marginal_acceptance_gain(const editor::Policy& policy, double m, double a_polish,
                                  const Calibration& cal, const SimConfig& sim, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("marginal_acceptance_gain: delta > 0");
  const std::vector<double> none;
  const Setup st{policy, m, a_polish, cal, sim, none};
  check_config(policy, m, sim, none);
  std::vector<double> per_replicate;
  for (int r = 0; r < sim.replicates; ++r) {
    const auto pop = draw_population(st, static_cast<std::uint64_t>(r));
    const double t = acceptance_threshold(pop.signal, policy.K);
    double gain = 0.0;
    for (std::size_t i = 0; i < pop.signal.size(); ++i) {
      const double shift = pop.loading[i] * cal.beta * delta;
      gain += static_cast<double>(pop.signal[i] + shift >= t) -
              static_cast<double>(pop.signal[i] - shift >= t);
    }
    per_replicate.push_back(gain / (2.0 * delta * static_cast<double>(pop.signal.size())));
  }
  return summarize(per_replicate);
}

FocCheck foc_consistency(const editor::Policy& policy, double m, const Calibration& cal,
                         const SimConfig& sim) {
  FocCheck out;
  out.a_star = equilibrium_a(policy, m, cal, sim);
  const auto gain = marginal_acceptance_gain(policy, m, out.a_star, cal, sim);
  out.marginal_value = gain;
  out.marginal_value.mean *= cal.V;
  out.marginal_value.se *= cal.V;
  out.marginal_cost = cal.polish_marginal_cost(out.a_star);
  out.consistent = out.marginal_value.within_se(out.marginal_cost, 3.0);
  return out;
}

CompositionError composition_approximation_error(const editor::Policy& policy, double m,
                                                 const Calibration& cal, const SimConfig& sim) {
  const double a = equilibrium_a(policy, m, cal, sim);
  const std::vector<double> none;
  SimConfig det = sim;
  det.stochastic_composition = false;
  SimConfig sto = sim;
  sto.stochastic_composition = true;
  const auto d = run(Setup{policy, m, a, cal, det, none});
  const auto s = run(Setup{policy, m, a, cal, sto, none});
  std::vector<double> diff(d.Q.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = s.Q[i] - d.Q[i];
  CompositionError out;
  out.Q_deterministic = summarize(d.Q);
  out.Q_stochastic = summarize(s.Q);
  out.error = summarize(diff);
  out.abs_error = std::abs(out.error.mean);
  return out;
}

}  // namespace peerreview::mc
