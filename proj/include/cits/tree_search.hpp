#ifndef CITS_TREE_SEARCH_HPP
#define CITS_TREE_SEARCH_HPP

// Coherent Ising tree search.
//
// Each epoch:
//   1. evolve    one poor man's CIM step on the current amplitudes -> root
//   2. expand    per node, flip the b spins with the highest annealing flip
//                probability; each child negates one amplitude of its parent.
//                In the complete scheme every child also explores with one
//                noiseless trig step; the explored amplitudes are a look-ahead
//                that fixes the child's readout (reward, next expansion) while
//                the child itself keeps the flipped amplitudes.
//   3. backprop  Q_j = R_j + sum_{i in children(j)} p_i Q_i, with
//                R = H(sgn X_root) - H(sgn X_node)
//   4. select    greedy descent through children with positive return
//
// A positive return means a lower energy; select() stops where no child has one.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include "cits/anneal.hpp"
#include "cits/cim.hpp"
#include "cits/errors.hpp"
#include "cits/graph.hpp"
#include "cits/run_record.hpp"

namespace cits {

enum class Scheme { Naive, Complete };

inline std::string_view scheme_name(Scheme s) { return s == Scheme::Naive ? "naive" : "complete"; }

inline Scheme parse_scheme(std::string_view name) {
  if (name == "naive") return Scheme::Naive;
  if (name == "complete") return Scheme::Complete;
  throw Error("unknown scheme '" + std::string(name) + "' (expected naive or complete)");
}

struct CitsConfig {
  std::size_t depth = 2;
  std::size_t breadth = 2;
  Scheme scheme = Scheme::Naive;
  CimConfig cim;
  double t_star_init = 1.0;  // expansion temperature, follows the annealing schedule

  void validate(std::size_t n) const {
    cim.validate();
    if (depth < 1) throw ConfigError("depth", "must be >= 1");
    if (breadth < 1) throw ConfigError("breadth", "must be >= 1");
    if (n > 0 && breadth > n) throw ConfigError("breadth", "must not exceed the node count");
    if (!(t_star_init > 0.0)) throw ConfigError("t_star_init", "must be > 0");
  }
};

struct TreeNode {
  AmplitudeState amplitudes;  // parent's amplitudes with one entry negated
  AmplitudeState explored;    // after the exploration step; == amplitudes when naive
  SpinConfig spins;           // sign readout of explored
  std::optional<std::size_t> flipped_index;
  double prior = 1.0;
  double reward = 0.0;
  double ret = 0.0;
  std::size_t depth = 0;
  std::size_t parent = 0;
  std::vector<std::size_t> children;
};

/// Arena-backed tree; nodes[0] is the root and children always follow
/// their parent.
struct SearchTree {
  std::vector<TreeNode> nodes;

  const TreeNode& root() const { return nodes.front(); }
  std::size_t size() const noexcept { return nodes.size(); }
};

/// Upper bound on node count: sum_{k=0..d} b^k.
inline std::size_t max_tree_size(std::size_t depth, std::size_t breadth) {
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t k = 0; k <= depth; ++k) {
    total += layer;
    layer *= breadth;
  }
  return total;
}

inline AmplitudeState evolve(const CouplingGraph& g, const AmplitudeState& state,
                             const CimConfig& cfg, std::size_t epoch, Rng& rng) {
  return step_poor_man(g, state, cfg, epoch, rng);
}

/// One noiseless trig step in the complete scheme, identity in the naive one.
inline AmplitudeState explore(const CouplingGraph& g, const AmplitudeState& state,
                              const CitsConfig& cfg) {
  if (cfg.scheme == Scheme::Naive) return state;
  CimConfig quiet = cfg.cim;
  quiet.noise_std = 0.0;
  Rng unused(0);
  return step_trig(g, state, quiet, 0, unused);
}

/// R = H(sgn X_root) - H(sgn X_node); positive when the node lowers the energy.
inline double reward(const CouplingGraph& g, const SpinConfig& node, const SpinConfig& root) {
  return static_cast<double>(hamiltonian(g, root) - hamiltonian(g, node));
}

/// Indices of the b largest probabilities, ties broken toward the lower index.
inline std::vector<std::size_t> top_b(std::span<const double> p, std::size_t b) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  b = std::min(b, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(b), order.end(),
                    [&](std::size_t a, std::size_t c) { return p[a] > p[c] || (p[a] == p[c] && a < c); });
  order.resize(b);
  return order;
}

/// Appends b children of nodes[index] and returns their indices.
inline std::vector<std::size_t> expand(const CouplingGraph& g, SearchTree& tree, std::size_t index,
                                       const CitsConfig& cfg, double t_star) {
  const SpinConfig parent_spins = tree.nodes[index].spins;
  const AmplitudeState parent_amps = tree.nodes[index].amplitudes;
  const std::size_t depth = tree.nodes[index].depth + 1;
  const FlipDistribution dist = flip_probabilities(g, parent_spins, t_star);
  const SpinConfig& root_spins = tree.root().spins;

  std::vector<std::size_t> created;
  for (std::size_t spin : top_b(dist.p, cfg.breadth)) {
    TreeNode child;
    child.amplitudes = parent_amps;
    double& xi = child.amplitudes.x[spin];
    // A zero amplitude reads out as +1; push it just below zero so the
    // child's readout still differs at this index.
    xi = xi == 0.0 ? -std::numeric_limits<double>::min() : -xi;
    child.explored = explore(g, child.amplitudes, cfg);
    child.spins = sign_readout(child.explored);
    child.flipped_index = spin;
    child.prior = dist.p[spin];
    child.reward = reward(g, child.spins, root_spins);
    child.depth = depth;
    child.parent = index;
    created.push_back(tree.nodes.size());
    tree.nodes.push_back(std::move(child));
  }
  tree.nodes[index].children = created;
  return created;
}

/// Builds the full tree of depth cfg.depth rooted at the given amplitudes.
inline SearchTree build_tree(const CouplingGraph& g, const AmplitudeState& root_amplitudes,
                             const CitsConfig& cfg, double t_star) {
  SearchTree tree;
  tree.nodes.reserve(max_tree_size(cfg.depth, cfg.breadth));
  TreeNode root;
  root.amplitudes = root_amplitudes;
  root.explored = root_amplitudes;
  root.spins = sign_readout(root_amplitudes);
  tree.nodes.push_back(std::move(root));

  std::vector<std::size_t> layer{0};
  for (std::size_t k = 0; k < cfg.depth; ++k) {
    std::vector<std::size_t> next;
    for (std::size_t idx : layer) {
      const std::vector<std::size_t> kids = expand(g, tree, idx, cfg, t_star);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    layer = std::move(next);
  }
  return tree;
}

/// Sets ret on every node, bottom-up. Relies on children being stored after
/// their parent.
inline void backpropagate(SearchTree& tree) {
  for (std::size_t k = tree.nodes.size(); k-- > 0;) {
    TreeNode& node = tree.nodes[k];
    double q = node.reward;
    for (std::size_t c : node.children) q += tree.nodes[c].prior * tree.nodes[c].ret;
    node.ret = q;
  }
}

/// Greedy descent from the root through the child with the highest positive
/// return (ties: lowest flipped index). Returns the index of the last node.
inline std::size_t select(const SearchTree& tree) {
  std::size_t current = 0;
  for (;;) {
    const TreeNode& node = tree.nodes[current];
    std::optional<std::size_t> best;
    for (std::size_t c : node.children) {
      const TreeNode& child = tree.nodes[c];
      if (!(child.ret > 0.0)) continue;
      if (!best) {
        best = c;
        continue;
      }
      const TreeNode& incumbent = tree.nodes[*best];
      if (child.ret > incumbent.ret ||
          (child.ret == incumbent.ret && *child.flipped_index < *incumbent.flipped_index)) {
        best = c;
      }
    }
    if (!best) return current;
    current = *best;
  }
}

inline RunRecord cits_solve(const CouplingGraph& g, const CitsConfig& cfg, std::size_t n_epochs,
                            const AmplitudeObserver& observer = {}) {
  cfg.validate(g.node_count());
  Rng rng(cfg.cim.rng_seed);
  AmplitudeState state(g.node_count());
  detail::TrajectoryRecorder recorder("cits", cfg.cim.rng_seed, g.node_count(), n_epochs);
  double t_star = cfg.t_star_init;
  for (std::size_t epoch = 0; epoch < n_epochs; ++epoch) {
    t_star = temperature_schedule(t_star, epoch, n_epochs);
    state = evolve(g, state, cfg.cim, epoch, rng);
    SearchTree tree = build_tree(g, state, cfg, t_star);
    backpropagate(tree);
    state = std::move(tree.nodes[select(tree)].amplitudes);
    if (observer) observer(epoch, state);
    recorder.observe(g, sign_readout(state));
  }
  return std::move(recorder).finish();
}

}  // namespace cits

#endif  // CITS_TREE_SEARCH_HPP
