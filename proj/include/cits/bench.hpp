#ifndef CITS_BENCH_HPP
#define CITS_BENCH_HPP

// Seeded ensembles, epochs-to-solution statistics and result files.

#include <openssl/evp.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cits/anneal.hpp"
#include "cits/cim.hpp"
#include "cits/errors.hpp"
#include "cits/graph.hpp"
#include "cits/parallel.hpp"
#include "cits/rng.hpp"
#include "cits/run_record.hpp"
#include "cits/tree_search.hpp"
#include "json.hpp"

namespace cits {

enum class Algorithm { Sa, Cim, Cits };

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Sa: return "sa";
    case Algorithm::Cim: return "cim";
    case Algorithm::Cits: return "cits";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view name) {
  if (name == "sa") return Algorithm::Sa;
  if (name == "cim") return Algorithm::Cim;
  if (name == "cits") return Algorithm::Cits;
  throw Error("unknown algorithm '" + std::string(name) + "' (expected sa, cim or cits)");
}

/// Everything the three solvers need. The CIM gains live in cits.cim and
/// are shared by the standalone CIM solver.
struct SolverConfig {
  double t_star_init = 1.0;
  CitsConfig cits;
};

/// One seeded solve. The seed replaces whatever seed the config carries.
inline RunRecord run_single(Algorithm algorithm, const CouplingGraph& g, const SolverConfig& cfg,
                            std::size_t n_epochs, std::uint64_t seed) {
  switch (algorithm) {
    case Algorithm::Sa: {
      SaConfig sa{n_epochs, cfg.t_star_init, seed};
      return sa_solve(g, sa);
    }
    case Algorithm::Cim: {
      CimConfig cim = cfg.cits.cim;
      cim.rng_seed = seed;
      return cim_solve(g, cim, n_epochs);
    }
    case Algorithm::Cits: {
      CitsConfig cits = cfg.cits;
      cits.cim.rng_seed = seed;
      cits.t_star_init = cfg.t_star_init;
      return cits_solve(g, cits, n_epochs);
    }
  }
  throw Error("unknown algorithm");
}

/// Runs n_runs solves in parallel; run k uses derive_seed(master_seed, k).
/// Records come back ordered by run index.
inline std::vector<RunRecord> run_ensemble(Algorithm algorithm, const CouplingGraph& g,
                                           std::string_view instance, const SolverConfig& cfg,
                                           std::size_t n_runs, std::size_t n_epochs,
                                           std::uint64_t master_seed) {
  if (n_runs < 1) throw ConfigError("n_runs", "must be >= 1");
  std::vector<RunRecord> records(n_runs);
  parallel_for(n_runs, [&](std::size_t k) {
    records[k] = run_single(algorithm, g, cfg, n_epochs, derive_seed(master_seed, k));
    records[k].instance = std::string(instance);
  });
  return records;
}

// ---------------------------------------------------------------------------
// Statistics

struct EnsembleStats {
  long target = 0;
  std::vector<std::optional<std::size_t>> epochs_to_solution;  // 1-based; nullopt if censored
  std::optional<std::size_t> q1, q25, q50, q75;
  double success_rate = 0.0;
  std::size_t n_runs = 0;
};

/// Nearest-rank percentile of ascending `sorted`: element at rank ceil(p/100 * N).
inline std::size_t nearest_rank(std::span<const std::size_t> sorted, int percent) {
  if (sorted.empty()) throw Error("percentile of an empty sample");
  const std::size_t n = sorted.size();
  std::size_t rank = (static_cast<std::size_t>(percent) * n + 99) / 100;
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted[rank - 1];
}

/// First 1-based epoch with running-max cut >= target, or nullopt.
inline std::optional<std::size_t> first_epoch_reaching(const RunRecord& r, long target) {
  for (std::size_t t = 0; t < r.cuts_per_epoch.size(); ++t) {
    if (r.cuts_per_epoch[t] >= target) return t + 1;
  }
  return std::nullopt;
}

/// Percentiles run over the uncensored runs only; a percentile is reported
/// only when at least that fraction of all runs succeeded.
inline EnsembleStats epochs_to_target(std::span<const RunRecord> records, long target) {
  if (target < 0) throw ConfigError("target", "must be >= 0");
  EnsembleStats stats;
  stats.target = target;
  stats.n_runs = records.size();
  std::vector<std::size_t> hits;
  for (const RunRecord& r : records) {
    stats.epochs_to_solution.push_back(first_epoch_reaching(r, target));
    if (stats.epochs_to_solution.back()) hits.push_back(*stats.epochs_to_solution.back());
  }
  if (records.empty()) return stats;
  stats.success_rate = static_cast<double>(hits.size()) / static_cast<double>(records.size());
  std::sort(hits.begin(), hits.end());
  auto pick = [&](int percent) -> std::optional<std::size_t> {
    if (hits.empty() || hits.size() * 100 < static_cast<std::size_t>(percent) * records.size()) {
      return std::nullopt;
    }
    return nearest_rank(hits, percent);
  };
  stats.q1 = pick(1);
  stats.q25 = pick(25);
  stats.q50 = pick(50);
  stats.q75 = pick(75);
  return stats;
}

// ---------------------------------------------------------------------------
// Scaling fits

enum class FitModel { Linear, Quadratic };

struct FitResult {
  std::vector<double> coefficients;  // ascending powers: c0 + c1 n (+ c2 n^2)
  double rms_residual = 0.0;
};

inline FitResult scaling_fit(std::span<const std::pair<double, double>> points, FitModel model) {
  if (points.size() < 3) throw FitError("scaling fit needs at least 3 points");
  const Eigen::Index terms = model == FitModel::Linear ? 2 : 3;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(points.size()), terms);
  Eigen::VectorXd b(static_cast<Eigen::Index>(points.size()));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const auto [n, y] = points[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < terms; ++c) a(r, c) = std::pow(n, static_cast<double>(c));
    b(r) = y;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < terms) throw FitError("rank-deficient input: not enough distinct sizes");
  const Eigen::VectorXd x = qr.solve(b);
  const Eigen::VectorXd residual = a * x - b;
  FitResult out;
  out.coefficients.assign(x.data(), x.data() + x.size());
  out.rms_residual = std::sqrt(residual.squaredNorm() / static_cast<double>(points.size()));
  return out;
}

// ---------------------------------------------------------------------------
// Result files

/// Content hash in git's blob format: SHA-1 over "blob <len>\0" + edge list.
inline std::string graph_content_hash(const CouplingGraph& g) {
  const std::string body = write_edge_list(g);
  const std::string header = "blob " + std::to_string(body.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, header.data(), header.size()) != 1 ||
      EVP_DigestUpdate(ctx, body.data(), body.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("SHA-1 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

inline constexpr std::string_view kCsvHeader = "algorithm,instance,seed,epoch,cut";

/// One row per (run, epoch); epochs are 1-based.
inline std::string results_csv(std::span<const RunRecord> records) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const RunRecord& r : records) {
    for (std::size_t t = 0; t < r.cuts_per_epoch.size(); ++t) {
      out << r.algorithm << ',' << r.instance << ',' << r.seed << ',' << t + 1 << ','
          << r.cuts_per_epoch[t] << '\n';
    }
  }
  return out.str();
}

/// Parses results_csv() output back into records (cut series only; best_cut
/// is restored from the series, best_config left empty).
inline std::vector<RunRecord> read_results_csv(std::string_view text) {
  std::vector<RunRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) throw ParseError(line_no, "unexpected CSV header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    if (fields.size() != 5) throw ParseError(line_no, "expected 5 columns");
    try {
      const std::uint64_t seed = std::stoull(fields[2]);
      const std::size_t epoch = std::stoul(fields[3]);
      const long cut = std::stol(fields[4]);
      const bool same_run = !records.empty() && records.back().algorithm == fields[0] &&
                            records.back().instance == fields[1] && records.back().seed == seed &&
                            records.back().cuts_per_epoch.size() + 1 == epoch;
      if (!same_run) {
        if (epoch != 1) throw ParseError(line_no, "run does not start at epoch 1");
        records.push_back({fields[0], fields[1], seed, {}, 0, {}});
      }
      records.back().cuts_per_epoch.push_back(cut);
      records.back().best_cut = std::max(records.back().best_cut, cut);
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "non-numeric field");
    }
  }
  return records;
}

inline nlohmann::json stats_json(const EnsembleStats& s) {
  auto opt = [](const std::optional<std::size_t>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return {{"target", s.target},        {"q1", opt(s.q1)},   {"q25", opt(s.q25)},
          {"q50", opt(s.q50)},         {"q75", opt(s.q75)}, {"success_rate", s.success_rate},
          {"n_runs", s.n_runs}};
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Writes <base>.csv with every record and <base>.json with `summary`.
inline void write_results(std::span<const RunRecord> records, const nlohmann::json& summary,
                          const std::filesystem::path& base) {
  std::filesystem::path csv = base;
  csv += ".csv";
  std::filesystem::path json = base;
  json += ".json";
  write_text_file(csv, results_csv(records));
  write_text_file(json, summary.dump(2) + "\n");
}

}  // namespace cits

#endif  // CITS_BENCH_HPP
