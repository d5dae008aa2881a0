#include <gtest/gtest.h>

#include <map>

#include "cits/bench.hpp"
#include "cits/oracle.hpp"
#include "test_support.hpp"

namespace cits {
namespace {

// Exhaustive values computed with an independent brute-force script over
// all 2^n assignments; counts are +-s pairs.
struct Frozen {
  long max_cut;
  std::uint64_t count;
};

const std::map<std::string, Frozen>& frozen_battery() {
  static const std::map<std::string, Frozen> m{
      {"square-lattice-3", {12, 51}}, {"square-lattice-4", {32, 1}},
      {"circular-ladder-3", {7, 3}},  {"circular-ladder-4", {12, 1}},
      {"circular-ladder-5", {13, 5}}, {"circular-ladder-6", {18, 1}},
      {"circular-ladder-7", {19, 7}}, {"circular-ladder-8", {24, 1}},
      {"circular-ladder-9", {25, 9}}, {"circular-ladder-10", {30, 1}},
      {"mobius-ladder-3", {9, 1}},    {"mobius-ladder-4", {10, 4}},
      {"mobius-ladder-5", {15, 1}},   {"mobius-ladder-6", {16, 6}},
      {"mobius-ladder-7", {21, 1}},   {"mobius-ladder-8", {22, 8}},
      {"mobius-ladder-9", {27, 1}},   {"mobius-ladder-10", {28, 10}},
  };
  return m;
}

TEST(ExactMaxCut, SmallGraphs) {
  EXPECT_EQ(exact_max_cut(testing::triangle()).max_cut, 2);
  EXPECT_EQ(exact_max_cut(testing::triangle()).argmax_count, 3u);

  const ExactResult c4 = exact_max_cut(testing::cycle4());
  EXPECT_EQ(c4.max_cut, 4);
  EXPECT_EQ(c4.argmax_count, 1u);
  EXPECT_EQ(c4.witness, SpinConfig({+1, -1, +1, -1}));

  EXPECT_EQ(exact_max_cut(gen_mobius_ladder(4)).max_cut, 10);
  EXPECT_EQ(exact_max_cut(testing::isolated(5)).max_cut, 0);
  EXPECT_EQ(exact_max_cut(CouplingGraph(1, {})).max_cut, 0);
}

TEST(ExactMaxCut, WitnessIsLexSmallest) {
  // Path 0-1-2: the unique optimum up to global flip is + - +.
  EXPECT_EQ(exact_max_cut(testing::path3()).witness, SpinConfig({+1, -1, +1}));
  // Triangle optima with s0 = +: (+,+,-), (+,-,+), (+,-,-); smallest is (+,-,-).
  EXPECT_EQ(exact_max_cut(testing::triangle()).witness, SpinConfig({+1, -1, -1}));
}

TEST(ExactMaxCut, FrozenBattery) {
  for (const auto& [spec, g] : testing::small_battery()) {
    const ExactResult r = exact_max_cut(g);
    const Frozen& want = frozen_battery().at(instance_id(spec));
    EXPECT_EQ(r.max_cut, want.max_cut) << instance_id(spec);
    EXPECT_EQ(r.argmax_count, want.count) << instance_id(spec);
    EXPECT_EQ(cut_value(g, r.witness), r.max_cut);
    EXPECT_EQ(r.witness[0], 1);
  }
}

TEST(ExactMaxCut, ParallelChunksMatchSingleChunk) {
  // 20 nodes take the multi-chunk path; compare with a plain loop.
  std::mt19937_64 rng(11);
  const CouplingGraph g = testing::random_graph(16, 0.3, rng);
  long best = -1;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 15); ++mask) {
    const long c = cut_value(g, detail::spins_from_mask(16, mask));
    if (c > best) {
      best = c;
      count = 1;
    } else if (c == best) {
      ++count;
    }
  }
  const ExactResult r = exact_max_cut(g);
  EXPECT_EQ(r.max_cut, best);
  EXPECT_EQ(r.argmax_count, count);
}

TEST(ExactMaxCut, SizeLimit) {
  EXPECT_THROW(exact_max_cut(gen_square_lattice(10)), SizeLimitError);
  EXPECT_THROW(exact_max_cut(testing::isolated(31)), SizeLimitError);
}

TEST(KnownGroundState, Lattices) {
  EXPECT_EQ(known_ground_state({GraphFamily::SquareLattice, 10}), 200);
  EXPECT_EQ(known_ground_state({GraphFamily::SquareLattice, 4}), 32);
  EXPECT_EQ(known_ground_state({GraphFamily::SquareLattice, 7}), std::nullopt);
  EXPECT_EQ(known_ground_state({GraphFamily::CircularLadder, 20}), std::nullopt);
  EXPECT_EQ(*known_ground_state({GraphFamily::SquareLattice, 4}),
            exact_max_cut(gen_square_lattice(4)).max_cut);
  EXPECT_EQ(cut_value(gen_square_lattice(10), testing::checkerboard(10)), 200);
}

TEST(OracleProperty, HeuristicsNeverExceedExact) {
  for (const auto& [spec, g] : testing::small_battery()) {
    const long exact = frozen_battery().at(instance_id(spec)).max_cut;
    SolverConfig cfg;
    apply_family_gains(cfg.cits.cim, spec.kind);
    for (Algorithm alg : {Algorithm::Sa, Algorithm::Cim, Algorithm::Cits}) {
      for (std::uint64_t k = 0; k < 5; ++k) {
        const RunRecord r = run_single(alg, g, cfg, 60, derive_seed(3, k));
        EXPECT_LE(r.best_cut, exact);
        EXPECT_EQ(cut_value(g, r.best_config), r.best_cut);
      }
    }
  }
}

TEST(OracleProperty, RawMaximizerCountIsEven) {
  // Every maximizer pairs with its global flip.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const CouplingGraph g = testing::random_graph(10, 0.4, rng);
    const long best = exact_max_cut(g).max_cut;
    std::uint64_t raw = 0;
    for (std::uint64_t m = 0; m < 1024; ++m) {
      std::vector<Spin> s(10);
      for (std::size_t i = 0; i < 10; ++i) s[i] = (m >> i) & 1U ? -1 : 1;
      raw += cut_value(g, SpinConfig(std::move(s))) == best ? 1 : 0;
    }
    EXPECT_EQ(raw % 2, 0u);
    EXPECT_EQ(raw / 2, exact_max_cut(g).argmax_count);
  }
}

}  // namespace
}  // namespace cits
