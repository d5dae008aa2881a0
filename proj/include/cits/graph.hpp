#ifndef CITS_GRAPH_HPP
#define CITS_GRAPH_HPP

// Ising-formulated MAX-CUT instances.
//
// Sign convention: an edge (i, j) carries coupling J_ij = -1, so that
//   H(s)   = -1/2 sum_ij J_ij s_i s_j = sum_{(i,j) in E} s_i s_j
//   CUT(s) = sum_{(i,j) in E} (1 - s_i s_j) / 2 = (|E| - H(s)) / 2
// and minimizing H maximizes the cut.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cits/errors.hpp"

namespace cits {

using Spin = std::int8_t;

/// Binary spin vector with every entry in {-1, +1}.
class SpinConfig {
 public:
  SpinConfig() = default;

  explicit SpinConfig(std::size_t n, Spin value = +1) : spins_(n, value) {
    check_spin(value);
  }

  explicit SpinConfig(std::vector<Spin> spins) : spins_(std::move(spins)) {
    for (Spin s : spins_) check_spin(s);
  }

  SpinConfig(std::initializer_list<int> spins) {
    spins_.reserve(spins.size());
    for (int s : spins) {
      check_spin(s);
      spins_.push_back(static_cast<Spin>(s));
    }
  }

  std::size_t size() const noexcept { return spins_.size(); }
  Spin operator[](std::size_t i) const { return spins_[i]; }
  std::span<const Spin> values() const noexcept { return spins_; }

  void flip(std::size_t i) {
    if (i >= spins_.size()) throw DimensionError("spin index out of range");
    spins_[i] = static_cast<Spin>(-spins_[i]);
  }

  SpinConfig flipped(std::size_t i) const {
    SpinConfig out = *this;
    out.flip(i);
    return out;
  }

  SpinConfig negated() const {
    SpinConfig out = *this;
    for (Spin& s : out.spins_) s = static_cast<Spin>(-s);
    return out;
  }

  /// Renders as a string of '+' and '-'.
  std::string str() const {
    std::string out;
    out.reserve(spins_.size());
    for (Spin s : spins_) out.push_back(s > 0 ? '+' : '-');
    return out;
  }

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

 private:
  static void check_spin(int s) {
    if (s != 1 && s != -1) throw DimensionError("spin value must be -1 or +1");
  }

  std::vector<Spin> spins_;
};

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Neighbor {
  std::size_t index;
  int coupling;
};

/// Undirected graph with its dense symmetric coupling matrix. Immutable.
class CouplingGraph {
 public:
  CouplingGraph() = default;

  /// Edges are normalized to u < v. Self-loops, duplicates and
  /// out-of-range endpoints throw DimensionError.
  CouplingGraph(std::size_t n, std::vector<Edge> edges)
      : n_(n), edges_(std::move(edges)), couplings_(n * n, 0), adjacency_(n) {
    for (Edge& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.v >= n_) throw DimensionError("edge endpoint out of range");
      if (e.u == e.v) throw DimensionError("self-loop on node " + std::to_string(e.u));
      int& j = couplings_[e.u * n_ + e.v];
      if (j != 0) {
        throw DimensionError("duplicate edge " + std::to_string(e.u) + " " +
                             std::to_string(e.v));
      }
      j = -1;
      couplings_[e.v * n_ + e.u] = -1;
      adjacency_[e.u].push_back({e.v, -1});
      adjacency_[e.v].push_back({e.u, -1});
    }
  }

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  int coupling(std::size_t i, std::size_t j) const { return couplings_[i * n_ + j]; }

  std::span<const Neighbor> neighbors(std::size_t i) const { return adjacency_[i]; }
  std::size_t degree(std::size_t i) const { return adjacency_[i].size(); }

  /// Equal node count and equal edge sets, regardless of edge order.
  friend bool operator==(const CouplingGraph& a, const CouplingGraph& b) {
    if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
    std::vector<Edge> ea = a.edges_;
    std::vector<Edge> eb = b.edges_;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> couplings_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// ---------------------------------------------------------------------------
// Generators

enum class GraphFamily { SquareLattice, CircularLadder, MobiusLadder };

struct FamilySpec {
  GraphFamily kind = GraphFamily::SquareLattice;
  std::size_t size = 0;  // side length L, or rung count m

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

inline std::string_view family_name(GraphFamily kind) {
  switch (kind) {
    case GraphFamily::SquareLattice: return "square-lattice";
    case GraphFamily::CircularLadder: return "circular-ladder";
    case GraphFamily::MobiusLadder: return "mobius-ladder";
  }
  return "unknown";
}

inline GraphFamily parse_family(std::string_view name) {
  if (name == "square-lattice") return GraphFamily::SquareLattice;
  if (name == "circular-ladder") return GraphFamily::CircularLadder;
  if (name == "mobius-ladder") return GraphFamily::MobiusLadder;
  throw Error("unknown graph family '" + std::string(name) +
              "' (expected square-lattice, circular-ladder or mobius-ladder)");
}

inline std::string instance_id(const FamilySpec& spec) {
  return std::string(family_name(spec.kind)) + "-" + std::to_string(spec.size);
}

/// L x L grid with periodic wrap in both directions, nodes row-major.
inline CouplingGraph gen_square_lattice(std::size_t side) {
  if (side < 3) {
    throw DegenerateSizeError("square lattice needs side >= 3, got " + std::to_string(side));
  }
  std::vector<Edge> edges;
  edges.reserve(2 * side * side);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      const std::size_t node = r * side + c;
      edges.push_back({node, ((r + 1) % side) * side + c});
      edges.push_back({node, r * side + (c + 1) % side});
    }
  }
  return CouplingGraph(side * side, std::move(edges));
}

/// Prism graph: outer cycle u_0..u_{m-1} (nodes 0..m-1), inner cycle
/// v_0..v_{m-1} (nodes m..2m-1), rungs u_i - v_i.
inline CouplingGraph gen_circular_ladder(std::size_t rungs) {
  if (rungs < 3) {
    throw DegenerateSizeError("circular ladder needs >= 3 rungs, got " + std::to_string(rungs));
  }
  const std::size_t m = rungs;
  std::vector<Edge> edges;
  edges.reserve(3 * m);
  for (std::size_t i = 0; i < m; ++i) edges.push_back({i, (i + 1) % m});
  for (std::size_t i = 0; i < m; ++i) edges.push_back({m + i, m + (i + 1) % m});
  for (std::size_t i = 0; i < m; ++i) edges.push_back({i, m + i});
  return CouplingGraph(2 * m, std::move(edges));
}

/// Cycle C_{2m} plus the m diameters {i, i+m}.
inline CouplingGraph gen_mobius_ladder(std::size_t rungs) {
  if (rungs < 3) {
    throw DegenerateSizeError("mobius ladder needs >= 3 rungs, got " + std::to_string(rungs));
  }
  const std::size_t n = 2 * rungs;
  std::vector<Edge> edges;
  edges.reserve(3 * rungs);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  for (std::size_t i = 0; i < rungs; ++i) edges.push_back({i, i + rungs});
  return CouplingGraph(n, std::move(edges));
}

inline CouplingGraph make_graph(const FamilySpec& spec) {
  switch (spec.kind) {
    case GraphFamily::SquareLattice: return gen_square_lattice(spec.size);
    case GraphFamily::CircularLadder: return gen_circular_ladder(spec.size);
    case GraphFamily::MobiusLadder: return gen_mobius_ladder(spec.size);
  }
  throw Error("unknown graph family");
}

// ---------------------------------------------------------------------------
// Energy and cut

namespace detail {
inline void check_dimension(const CouplingGraph& g, std::size_t len) {
  if (len != g.node_count()) {
    throw DimensionError("configuration has " + std::to_string(len) +
                         " entries, graph has " + std::to_string(g.node_count()) + " nodes");
  }
}
}  // namespace detail

/// sum_j J_ij s_j
inline long local_field(const CouplingGraph& g, const SpinConfig& s, std::size_t i) {
  long field = 0;
  for (const Neighbor& nb : g.neighbors(i)) field += nb.coupling * s[nb.index];
  return field;
}

/// H = -1/2 sum_j sum_l J_jl s_j s_l.
inline long hamiltonian(const CouplingGraph& g, const SpinConfig& s) {
  detail::check_dimension(g, s.size());
  long h = 0;
  for (const Edge& e : g.edges()) h -= g.coupling(e.u, e.v) * s[e.u] * s[e.v];
  return h;
}

inline long cut_value(const CouplingGraph& g, const SpinConfig& s) {
  detail::check_dimension(g, s.size());
  long cut = 0;
  for (const Edge& e : g.edges()) cut += s[e.u] != s[e.v] ? 1 : 0;
  return cut;
}

/// H(s with spin i negated) - H(s) = 2 s_i sum_j J_ij s_j.
inline long delta_h(const CouplingGraph& g, const SpinConfig& s, std::size_t i) {
  detail::check_dimension(g, s.size());
  if (i >= g.node_count()) throw DimensionError("node index out of range");
  return 2L * s[i] * local_field(g, s, i);
}

// ---------------------------------------------------------------------------
// Edge-list text format
//
//   <n>
//   <i> <j>
//   ...
// Blank lines and lines starting with '#' are ignored.

inline CouplingGraph read_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;

  auto parse_index = [&](std::string_view tok, std::size_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
      throw ParseError(line_no, "expected a non-negative integer, got '" + std::string(tok) + "'");
    }
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::vector<std::string_view> tokens;
    std::size_t k = 0;
    while (k < line.size()) {
      while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      std::size_t start = k;
      while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      if (k > start) tokens.push_back(line.substr(start, k - start));
    }
    if (tokens.empty() || tokens.front().front() == '#') continue;

    if (!have_header) {
      if (tokens.size() != 1) throw ParseError(line_no, "expected node count");
      parse_index(tokens[0], n);
      have_header = true;
      continue;
    }
    if (tokens.size() != 2) throw ParseError(line_no, "expected 'i j'");
    Edge e;
    parse_index(tokens[0], e.u);
    parse_index(tokens[1], e.v);
    if (e.u == e.v) throw ParseError(line_no, "self-loop on node " + std::to_string(e.u));
    if (e.u >= n || e.v >= n) {
      throw ParseError(line_no, "node index out of range for n=" + std::to_string(n));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert(e).second) {
      throw ParseError(line_no,
                       "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    edges.push_back(e);
  }
  if (!have_header) throw ParseError(line_no, "missing node count");
  return CouplingGraph(n, std::move(edges));
}

inline std::string write_edge_list(const CouplingGraph& g) {
  std::ostringstream out;
  out << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace cits

#endif  // CITS_GRAPH_HPP
