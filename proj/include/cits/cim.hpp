#ifndef CITS_CIM_HPP
#define CITS_CIM_HPP

// Discrete-time measurement-feedback coherent Ising machine.
//
// Two update maps act on the in-phase amplitudes x:
//   poor man's:  x_i <- cos^2(f_i - pi/4 + xi_i) - 1/2
//   trig:        x_i <- 1/2 sin(2 alpha x_i + 2 beta sum_j J_ij x_j) + xi_i,   y_i <- xi'_i
// with f_i = alpha x_i + beta sum_j J_ij x_j. Since cos^2(t - pi/4) - 1/2 = 1/2 sin(2t)
// the two agree exactly when the noise is off.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "cits/errors.hpp"
#include "cits/graph.hpp"
#include "cits/rng.hpp"
#include "cits/run_record.hpp"

namespace cits {

struct AmplitudeState {
  std::vector<double> x;
  std::vector<double> y;

  AmplitudeState() = default;
  explicit AmplitudeState(std::size_t n) : x(n, 0.0), y(n, 0.0) {}

  std::size_t size() const noexcept { return x.size(); }

  friend bool operator==(const AmplitudeState&, const AmplitudeState&) = default;
};

enum class Dynamics { PoorMan, Trig };

inline std::string_view dynamics_name(Dynamics d) {
  return d == Dynamics::PoorMan ? "poor-man" : "trig";
}

inline Dynamics parse_dynamics(std::string_view name) {
  if (name == "poor-man") return Dynamics::PoorMan;
  if (name == "trig") return Dynamics::Trig;
  throw Error("unknown dynamics '" + std::string(name) + "' (expected poor-man or trig)");
}

struct CimConfig {
  double alpha = 0.25;
  double beta = 0.29;
  double noise_std = 0.1;  // variance 1e-2
  std::size_t noise_epochs = 10;
  Dynamics dynamics = Dynamics::PoorMan;
  std::uint64_t rng_seed = 0;

  bool noise_active(std::size_t epoch) const { return noise_std > 0.0 && epoch < noise_epochs; }

  void validate() const {
    if (!(alpha >= 0.0)) throw ConfigError("alpha", "must be >= 0");
    if (!(beta >= 0.0)) throw ConfigError("beta", "must be >= 0");
    if (!(noise_std >= 0.0)) throw ConfigError("noise_std", "must be >= 0");
  }
};

/// Gains tuned per family: 0.25/0.29 for square lattices, 0.07/0.39 for ladders.
inline void apply_family_gains(CimConfig& cfg, GraphFamily family) {
  if (family == GraphFamily::SquareLattice) {
    cfg.alpha = 0.25;
    cfg.beta = 0.29;
  } else {
    cfg.alpha = 0.07;
    cfg.beta = 0.39;
  }
}

/// f_i = alpha x_i + beta sum_j J_ij x_j
inline std::vector<double> feedback(const CouplingGraph& g, std::span<const double> x,
                                    double alpha, double beta) {
  detail::check_dimension(g, x.size());
  std::vector<double> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double coupled = 0.0;
    for (const Neighbor& nb : g.neighbors(i)) coupled += nb.coupling * x[nb.index];
    f[i] = alpha * x[i] + beta * coupled;
  }
  return f;
}

namespace detail {
inline std::vector<double> draw_noise(std::size_t n, double stddev, Rng& rng) {
  std::normal_distribution<double> normal(0.0, stddev);
  std::vector<double> xi(n);
  for (double& v : xi) v = normal(rng);
  return xi;
}
}  // namespace detail

/// Noise enters inside the cosine. y is carried through untouched.
inline AmplitudeState step_poor_man(const CouplingGraph& g, const AmplitudeState& state,
                                    const CimConfig& cfg, std::size_t epoch, Rng& rng) {
  const std::vector<double> f = feedback(g, state.x, cfg.alpha, cfg.beta);
  const std::size_t n = f.size();
  std::vector<double> xi =
      cfg.noise_active(epoch) ? detail::draw_noise(n, cfg.noise_std, rng) : std::vector<double>(n);
  AmplitudeState next = state;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(f[i] - std::numbers::pi / 4.0 + xi[i]);
    next.x[i] = c * c - 0.5;
  }
  return next;
}

/// Euler-discretized reduced dynamics; noise is additive. Draws all x noise,
/// then all y noise.
inline AmplitudeState step_trig(const CouplingGraph& g, const AmplitudeState& state,
                                const CimConfig& cfg, std::size_t epoch, Rng& rng) {
  const std::vector<double> f = feedback(g, state.x, cfg.alpha, cfg.beta);
  const std::size_t n = f.size();
  AmplitudeState next(n);
  for (std::size_t i = 0; i < n; ++i) next.x[i] = 0.5 * std::sin(2.0 * f[i]);
  if (cfg.noise_active(epoch)) {
    const std::vector<double> xi_x = detail::draw_noise(n, cfg.noise_std, rng);
    const std::vector<double> xi_y = detail::draw_noise(n, cfg.noise_std, rng);
    for (std::size_t i = 0; i < n; ++i) {
      next.x[i] += xi_x[i];
      next.y[i] = xi_y[i];
    }
  }
  return next;
}

inline AmplitudeState cim_step(const CouplingGraph& g, const AmplitudeState& state,
                               const CimConfig& cfg, std::size_t epoch, Rng& rng) {
  return cfg.dynamics == Dynamics::PoorMan ? step_poor_man(g, state, cfg, epoch, rng)
                                           : step_trig(g, state, cfg, epoch, rng);
}

/// x > 0 -> +1, x < 0 -> -1, x == 0 -> +1.
inline SpinConfig sign_readout(const AmplitudeState& state) {
  std::vector<Spin> s(state.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = state.x[i] < 0.0 ? Spin{-1} : Spin{+1};
  return SpinConfig(std::move(s));
}

/// Called once per epoch with the amplitudes the cut was read from.
using AmplitudeObserver = std::function<void(std::size_t epoch, const AmplitudeState&)>;

/// Starts from the vacuum state x = y = 0.
inline RunRecord cim_solve(const CouplingGraph& g, const CimConfig& cfg, std::size_t n_epochs,
                           const AmplitudeObserver& observer = {}) {
  cfg.validate();
  Rng rng(cfg.rng_seed);
  AmplitudeState state(g.node_count());
  detail::TrajectoryRecorder recorder("cim", cfg.rng_seed, g.node_count(), n_epochs);
  for (std::size_t epoch = 0; epoch < n_epochs; ++epoch) {
    state = cim_step(g, state, cfg, epoch, rng);
    if (observer) observer(epoch, state);
    recorder.observe(g, sign_readout(state));
  }
  return std::move(recorder).finish();
}

/// Stable fixed points of the uncoupled map x <- 1/2 sin(2 alpha x).
///
/// Returns {0} for alpha <= 1 and {-x*, +x*} above threshold, where x* is
/// the root on (0, 1/2] located by bisection to 1e-10.
inline std::vector<double> fixed_points(double alpha) {
  if (!(alpha >= 0.0)) throw ConfigError("alpha", "must be >= 0");
  if (alpha <= 1.0) return {0.0};

  auto residual = [alpha](double x) { return 0.5 * std::sin(2.0 * alpha * x) - x; };
  // residual > 0 just right of 0 (slope alpha - 1 > 0) and residual(1/2) <= 0.
  double lo = 1e-9;
  double hi = 0.5;
  while (residual(lo) <= 0.0 && lo < hi) lo *= 2.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  return {-root, root};
}

}  // namespace cits

#endif  // CITS_CIM_HPP
