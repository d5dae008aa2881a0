#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "cits/bench.hpp"
#include "test_support.hpp"

namespace cits {
namespace {

RunRecord record_reaching(std::optional<std::size_t> epoch, std::size_t n_epochs, long target) {
  RunRecord r;
  r.algorithm = "sa";
  r.instance = "test";
  r.cuts_per_epoch.assign(n_epochs, target - 1);
  if (epoch) {
    for (std::size_t t = *epoch - 1; t < n_epochs; ++t) r.cuts_per_epoch[t] = target;
  }
  r.best_cut = r.cuts_per_epoch.back();
  return r;
}

// Sort-and-index reference for the nearest-rank rule.
std::size_t reference_percentile(std::vector<std::size_t> v, int percent) {
  std::sort(v.begin(), v.end());
  const double exact = percent / 100.0 * static_cast<double>(v.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(exact - 1e-12));
  if (rank < 1) rank = 1;
  return v[rank - 1];
}

TEST(EpochsToTarget, MixedWithCensored) {
  const std::vector<RunRecord> rs{record_reaching(10, 40, 5), record_reaching(20, 40, 5),
                                  record_reaching(30, 40, 5), record_reaching(std::nullopt, 40, 5)};
  const EnsembleStats s = epochs_to_target(rs, 5);
  EXPECT_EQ(s.q50, 20u);
  EXPECT_DOUBLE_EQ(s.success_rate, 0.75);
  EXPECT_EQ(s.q25, 10u);
  EXPECT_EQ(s.q75, 30u);
  EXPECT_EQ(s.q1, 10u);
  EXPECT_EQ(s.epochs_to_solution[3], std::nullopt);
}

TEST(EpochsToTarget, AllAtFirstEpoch) {
  std::vector<RunRecord> rs(7, record_reaching(1, 5, 3));
  const EnsembleStats s = epochs_to_target(rs, 3);
  EXPECT_EQ(s.q50, 1u);
  EXPECT_DOUBLE_EQ(s.success_rate, 1.0);
}

TEST(EpochsToTarget, NoneReached) {
  std::vector<RunRecord> rs(4, record_reaching(std::nullopt, 5, 3));
  const EnsembleStats s = epochs_to_target(rs, 3);
  EXPECT_DOUBLE_EQ(s.success_rate, 0.0);
  EXPECT_FALSE(s.q1 || s.q25 || s.q50 || s.q75);
}

TEST(EpochsToTarget, PercentileUndefinedBelowItsFraction) {
  // 2 of 10 succeed: Q1 exists, Q25 and above do not.
  std::vector<RunRecord> rs(8, record_reaching(std::nullopt, 5, 3));
  rs.push_back(record_reaching(2, 5, 3));
  rs.push_back(record_reaching(4, 5, 3));
  const EnsembleStats s = epochs_to_target(rs, 3);
  EXPECT_EQ(s.q1, 2u);
  EXPECT_FALSE(s.q25);
  EXPECT_FALSE(s.q50);
}

TEST(EpochsToTarget, NegativeTargetRejected) {
  EXPECT_THROW(epochs_to_target({}, -1), ConfigError);
}

TEST(NearestRank, MatchesReference) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> len(1, 150), value(1, 100);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::size_t> v(len(rng));
    for (std::size_t& x : v) x = value(rng);
    std::vector<std::size_t> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int p : {1, 25, 50, 75, 99, 100}) {
      ASSERT_EQ(nearest_rank(sorted, p), reference_percentile(v, p)) << p << " of " << v.size();
    }
  }
}

TEST(StatsProperty, MonotoneInTarget) {
  const CouplingGraph g = gen_square_lattice(6);
  const std::vector<RunRecord> rs =
      run_ensemble(Algorithm::Cim, g, "square-lattice-6", SolverConfig{}, 30, 60, 8);
  double prev_rate = 2.0;
  std::vector<std::optional<std::size_t>> prev;
  for (long target = 50; target <= 72; ++target) {
    const EnsembleStats s = epochs_to_target(rs, target);
    EXPECT_LE(s.success_rate, prev_rate);
    EXPECT_GE(s.success_rate, 0.0);
    EXPECT_LE(s.success_rate, 1.0);
    prev_rate = s.success_rate;
    if (s.q1 && s.q25) {
      EXPECT_LE(*s.q1, *s.q25);
    }
    if (s.q25 && s.q50) {
      EXPECT_LE(*s.q25, *s.q50);
    }
    if (s.q50 && s.q75) {
      EXPECT_LE(*s.q50, *s.q75);
    }
    for (std::size_t k = 0; k < prev.size(); ++k) {
      if (!prev[k]) {
        EXPECT_FALSE(s.epochs_to_solution[k]);
      } else if (s.epochs_to_solution[k]) {
        EXPECT_GE(*s.epochs_to_solution[k], *prev[k]);
      }
    }
    prev = s.epochs_to_solution;
  }
  for (const RunRecord& r : rs) {
    EXPECT_TRUE(std::is_sorted(r.cuts_per_epoch.begin(), r.cuts_per_epoch.end()));
    EXPECT_EQ(r.best_cut, *std::max_element(r.cuts_per_epoch.begin(), r.cuts_per_epoch.end()));
  }
}

TEST(ScalingFit, ExactLine) {
  const std::vector<std::pair<double, double>> pts{{36, 7.0}, {64, 11.0}, {100, 16.0}, {144, 22.0}};
  std::vector<std::pair<double, double>> line;
  for (auto [n, _] : pts) line.emplace_back(n, 0.125 * n + 2.5);
  const FitResult r = scaling_fit(line, FitModel::Linear);
  EXPECT_NEAR(r.coefficients[0], 2.5, 1e-9);
  EXPECT_NEAR(r.coefficients[1], 0.125, 1e-9);
  EXPECT_NEAR(r.rms_residual, 0.0, 1e-9);

  const FitResult rough = scaling_fit(pts, FitModel::Linear);
  EXPECT_GT(rough.rms_residual, 0.0);
}

TEST(ScalingFit, ExactParabola) {
  std::vector<std::pair<double, double>> pts;
  for (double n : {40.0, 80.0, 120.0, 160.0, 230.0}) pts.emplace_back(n, 0.003 * n * n - 0.2 * n + 9.0);
  const FitResult r = scaling_fit(pts, FitModel::Quadratic);
  ASSERT_EQ(r.coefficients.size(), 3u);
  EXPECT_NEAR(r.coefficients[0], 9.0, 1e-7);
  EXPECT_NEAR(r.coefficients[1], -0.2, 1e-9);
  EXPECT_NEAR(r.coefficients[2], 0.003, 1e-11);
  EXPECT_NEAR(r.rms_residual, 0.0, 1e-8);
}

TEST(ScalingFit, Errors) {
  const std::vector<std::pair<double, double>> two{{1, 1}, {2, 2}};
  EXPECT_THROW(scaling_fit(two, FitModel::Linear), FitError);
  const std::vector<std::pair<double, double>> same_n{{5, 1}, {5, 2}, {5, 3}};
  EXPECT_THROW(scaling_fit(same_n, FitModel::Linear), FitError);
  const std::vector<std::pair<double, double>> two_n{{5, 1}, {5, 2}, {7, 3}};
  EXPECT_THROW(scaling_fit(two_n, FitModel::Quadratic), FitError);
}

TEST(RunEnsemble, ProtocolShapeAndDeterminism) {
  const CouplingGraph g = gen_square_lattice(10);
  const auto a = run_ensemble(Algorithm::Sa, g, "L10", SolverConfig{}, 100, 100, 42);
  const auto b = run_ensemble(Algorithm::Sa, g, "L10", SolverConfig{}, 100, 100, 42);
  ASSERT_EQ(a.size(), 100u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].cuts_per_epoch.size(), 100u);
    EXPECT_EQ(a[k].seed, derive_seed(42, k));
    EXPECT_EQ(a[k].instance, "L10");
    EXPECT_EQ(a[k].cuts_per_epoch, b[k].cuts_per_epoch);
  }
  EXPECT_THROW(run_ensemble(Algorithm::Sa, g, "L10", SolverConfig{}, 0, 100, 42), ConfigError);
}

TEST(RunEnsemble, ZeroEdgeGraph) {
  for (Algorithm alg : {Algorithm::Sa, Algorithm::Cim, Algorithm::Cits}) {
    for (const RunRecord& r :
         run_ensemble(alg, testing::isolated(6), "empty", SolverConfig{}, 5, 20, 1)) {
      for (long c : r.cuts_per_epoch) EXPECT_EQ(c, 0);
    }
  }
}

TEST(SeedDerivation, FixedValues) {
  // splitmix64 reference outputs for state 0 and 1
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(1), 0x910a2dec89025cc1ULL);
  EXPECT_NE(derive_seed(0, 0), derive_seed(0, 1));
  EXPECT_NE(derive_seed(0, 1), derive_seed(1, 0));
}

TEST(ResultFiles, CsvRoundTrip) {
  const auto rs = run_ensemble(Algorithm::Cits, gen_circular_ladder(5), "circular-ladder-5",
                               SolverConfig{}, 100, 12, 9);
  const std::string csv = results_csv(rs);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 100 * 12);
  const auto back = read_results_csv(csv);
  ASSERT_EQ(back.size(), rs.size());
  for (std::size_t k = 0; k < rs.size(); ++k) {
    EXPECT_EQ(back[k].cuts_per_epoch, rs[k].cuts_per_epoch);
    EXPECT_EQ(back[k].seed, rs[k].seed);
    EXPECT_EQ(back[k].algorithm, "cits");
    EXPECT_EQ(back[k].best_cut, rs[k].best_cut);
  }
}

TEST(ResultFiles, EmptyListIsHeaderOnly) {
  EXPECT_EQ(results_csv({}), std::string(kCsvHeader) + "\n");
  EXPECT_TRUE(read_results_csv(results_csv({})).empty());
  EXPECT_THROW(read_results_csv("a,b\n"), ParseError);
  EXPECT_THROW(read_results_csv(std::string(kCsvHeader) + "\nsa,x,1,1,zz\n"), ParseError);
}

TEST(ResultFiles, WriteAndIoErrors) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "cits_bench_test";
  std::filesystem::create_directories(dir);
  const auto rs = run_ensemble(Algorithm::Sa, testing::single_edge(), "edge", SolverConfig{}, 2, 5, 0);
  write_results(rs, nlohmann::json{{"n_runs", 2}}, dir / "out");
  EXPECT_EQ(read_text_file(dir / "out.csv"), results_csv(rs));
  EXPECT_EQ(nlohmann::json::parse(read_text_file(dir / "out.json"))["n_runs"], 2);
  try {
    write_results(rs, {}, dir / "missing" / "out");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("missing"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(GraphHash, GitBlobFormat) {
  // `printf '2\n0 1\n' | git hash-object --stdin`
  const std::string h = graph_content_hash(testing::single_edge());
  EXPECT_EQ(h, "b544f7afafb6de1367ffe7dde1074b573c7d86e0");
  EXPECT_EQ(h, graph_content_hash(CouplingGraph(2, {{1, 0}})));
  EXPECT_NE(h, graph_content_hash(testing::path3()));
}

}  // namespace
}  // namespace cits
