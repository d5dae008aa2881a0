#ifndef CITS_ORACLE_HPP
#define CITS_ORACLE_HPP

// Exact MAX-CUT by exhaustive enumeration. Spin 0 is pinned to +1, which
// halves the space by global flip symmetry; the remaining 2^(n-1)
// configurations are walked in Gray-code order so each step flips one spin
// and updates the cut in O(degree).

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "cits/errors.hpp"
#include "cits/graph.hpp"
#include "cits/parallel.hpp"

namespace cits {

inline constexpr std::size_t kMaxEnumerableNodes = 30;

struct ExactResult {
  long max_cut = 0;
  std::uint64_t argmax_count = 0;  // +-s pairs counted once
  SpinConfig witness;              // lexicographically smallest maximizer with s_0 = +1
};

namespace detail {

// Bit k of a mask (k = 0..n-2) set means spin k+1 is -1.
inline SpinConfig spins_from_mask(std::size_t n, std::uint64_t mask) {
  SpinConfig s(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if ((mask >> k) & 1U) s.flip(k + 1);
  }
  return s;
}

// Lexicographic order on (s_1, ..., s_{n-1}) with -1 < +1 becomes numeric
// order on this key: spin 1 in the top bit, bit set when the spin is +1.
inline std::uint64_t lex_key(std::size_t n, std::uint64_t mask) {
  std::uint64_t key = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const bool up = ((mask >> k) & 1U) == 0;
    if (up) key |= std::uint64_t{1} << (n - 2 - k);
  }
  return key;
}

struct PartialResult {
  long max_cut = -1;
  std::uint64_t count = 0;
  std::uint64_t best_key = 0;
  std::uint64_t best_mask = 0;
};

}  // namespace detail

inline ExactResult exact_max_cut(const CouplingGraph& g) {
  const std::size_t n = g.node_count();
  if (n > kMaxEnumerableNodes) {
    throw SizeLimitError("exact enumeration supports at most " +
                         std::to_string(kMaxEnumerableNodes) + " nodes, graph has " +
                         std::to_string(n));
  }
  if (n <= 1) return {0, 1, SpinConfig(n)};

  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  const std::size_t chunks = total < 4096 ? 1 : std::min<std::uint64_t>(total / 1024, 256);
  std::vector<detail::PartialResult> partial(chunks);

  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = total * c / chunks;
    const std::uint64_t end = total * (c + 1) / chunks;
    std::uint64_t mask = begin ^ (begin >> 1);
    SpinConfig s = detail::spins_from_mask(n, mask);
    long cut = cut_value(g, s);
    detail::PartialResult& out = partial[c];

    for (std::uint64_t i = begin;;) {
      if (cut > out.max_cut) {
        out = {cut, 1, detail::lex_key(n, mask), mask};
      } else if (cut == out.max_cut) {
        ++out.count;
        const std::uint64_t key = detail::lex_key(n, mask);
        if (key < out.best_key) {
          out.best_key = key;
          out.best_mask = mask;
        }
      }
      if (++i == end) break;
      // Gray code i ^ (i >> 1) differs from its predecessor in bit ctz(i).
      const std::size_t bit = static_cast<std::size_t>(std::countr_zero(i));
      const std::size_t node = bit + 1;
      // Flipping spin `node` toggles every incident edge between cut and uncut.
      long incident_cut = 0;
      for (const Neighbor& nb : g.neighbors(node)) incident_cut += s[nb.index] != s[node] ? 1 : 0;
      cut += static_cast<long>(g.degree(node)) - 2 * incident_cut;
      s.flip(node);
      mask ^= std::uint64_t{1} << bit;
    }
  });

  detail::PartialResult best;
  for (const detail::PartialResult& p : partial) {
    if (p.max_cut > best.max_cut) {
      best = p;
    } else if (p.max_cut == best.max_cut) {
      best.count += p.count;
      if (p.best_key < best.best_key) {
        best.best_key = p.best_key;
        best.best_mask = p.best_mask;
      }
    }
  }
  return {best.max_cut, best.count, detail::spins_from_mask(n, best.best_mask)};
}

/// Closed-form optimum where one is known: even-side periodic lattices are
/// bipartite and the checkerboard cuts every edge.
inline std::optional<long> known_ground_state(const FamilySpec& spec) {
  if (spec.kind == GraphFamily::SquareLattice && spec.size >= 3 && spec.size % 2 == 0) {
    return static_cast<long>(2 * spec.size * spec.size);
  }
  return std::nullopt;
}

}  // namespace cits

#endif  // CITS_ORACLE_HPP
