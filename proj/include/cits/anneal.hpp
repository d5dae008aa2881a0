#ifndef CITS_ANNEAL_HPP
#define CITS_ANNEAL_HPP

// Parallel simulated annealing with a synchronous quasi-equilibrium update.
//
// Every epoch each spin i is flipped independently with probability
//   p_i = T* exp(-dH_i) / sum_j exp(-dH_j)      (k_B T = 1)
// clamped to [0, 1], so roughly T* spins flip per epoch.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cits/errors.hpp"
#include "cits/graph.hpp"
#include "cits/rng.hpp"
#include "cits/run_record.hpp"

namespace cits {

struct SaConfig {
  std::size_t n_epochs = 100;
  double t_star_init = 1.0;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (n_epochs < 4) throw ConfigError("n_epochs", "must be >= 4 for the annealing schedule");
    if (!(t_star_init > 0.0)) throw ConfigError("t_star_init", "must be > 0");
  }
};

struct FlipDistribution {
  std::vector<double> p;  // clamped to [0, 1]
  double z = 0.0;         // sum_j exp(-dH_j - shift)
  double shift = 0.0;     // max_j(-dH_j), subtracted before exponentiation
};

/// Softmax of -dH scaled by T*, computed with a max shift for overflow safety.
inline FlipDistribution flip_probabilities_from_delta(std::span<const double> delta,
                                                      double t_star) {
  FlipDistribution out;
  out.p.resize(delta.size());
  if (delta.empty()) return out;
  out.shift = -*std::min_element(delta.begin(), delta.end());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    out.p[i] = std::exp(-delta[i] - out.shift);
    out.z += out.p[i];
  }
  for (double& p : out.p) p = std::min(1.0, t_star * p / out.z);
  return out;
}

inline FlipDistribution flip_probabilities(const CouplingGraph& g, const SpinConfig& s,
                                           double t_star) {
  detail::check_dimension(g, s.size());
  std::vector<double> delta(g.node_count());
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = static_cast<double>(delta_h(g, s, i));
  return flip_probabilities_from_delta(delta, t_star);
}

/// One synchronous update. Draws exactly one uniform variate per spin, in index order.
inline SpinConfig sa_step(const CouplingGraph& g, const SpinConfig& s, double t_star, Rng& rng) {
  const FlipDistribution dist = flip_probabilities(g, s, t_star);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  SpinConfig next = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (uniform(rng) < dist.p[i]) next.flip(i);
  }
  return next;
}

/// Three-phase schedule: heat by 5% while t <= N/4, cool by 5% while
/// t <= N/2, then cool by 1%.
inline double temperature_schedule(double t_star, std::size_t epoch, std::size_t n_epochs) {
  const double t = static_cast<double>(epoch);
  const double quarter = static_cast<double>(n_epochs) / 4.0;
  const double half = static_cast<double>(n_epochs) / 2.0;
  if (t <= quarter) return 1.05 * t_star;
  if (t <= half) return 0.95 * t_star;
  return 0.99 * t_star;
}

/// Starts from all spins up; the schedule is advanced before each step.
inline RunRecord sa_solve(const CouplingGraph& g, const SaConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.rng_seed);
  SpinConfig s(g.node_count());
  detail::TrajectoryRecorder recorder("sa", cfg.rng_seed, g.node_count(), cfg.n_epochs);
  double t_star = cfg.t_star_init;
  for (std::size_t epoch = 0; epoch < cfg.n_epochs; ++epoch) {
    t_star = temperature_schedule(t_star, epoch, cfg.n_epochs);
    s = sa_step(g, s, t_star, rng);
    recorder.observe(g, s);
  }
  return std::move(recorder).finish();
}

}  // namespace cits

#endif  // CITS_ANNEAL_HPP
