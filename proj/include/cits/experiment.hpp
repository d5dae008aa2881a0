#ifndef CITS_EXPERIMENT_HPP
#define CITS_EXPERIMENT_HPP

// Algorithm x instance benchmark grid driven by a CliConfig.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cits/bench.hpp"
#include "cits/config.hpp"
#include "cits/graph.hpp"
#include "cits/oracle.hpp"
#include "cits/plot.hpp"
#include "json.hpp"

namespace cits {

struct BenchInstance {
  std::string id;
  std::optional<FamilySpec> family;
  CouplingGraph graph;
};

struct BenchEntry {
  Algorithm algorithm = Algorithm::Cits;
  std::string instance;
  std::size_t nodes = 0;
  std::string graph_hash;
  EnsembleStats exact;
  std::optional<EnsembleStats> approx;
};

struct BenchOutput {
  std::vector<RunRecord> records;
  std::vector<BenchEntry> entries;
  nlohmann::json summary;
};

inline std::vector<BenchInstance> resolve_instances(const CliConfig& cfg) {
  std::vector<BenchInstance> out;
  if (!cfg.graph.empty()) {
    std::filesystem::path path(cfg.graph);
    out.push_back({path.stem().string(), std::nullopt, read_edge_list(read_text_file(path))});
  }
  if (cfg.family) {
    if (cfg.sizes.empty()) throw ConfigError("size", "required when family is set");
    for (std::size_t size : cfg.sizes) {
      FamilySpec spec{*cfg.family, size};
      out.push_back({instance_id(spec), spec, make_graph(spec)});
    }
  }
  if (out.empty()) throw ConfigError("family", "no instance given: set family and size, or graph");
  return out;
}

/// Explicit target, else the closed-form ground state, else enumeration.
inline long resolve_target(const CliConfig& cfg, const BenchInstance& inst) {
  if (cfg.target) return *cfg.target;
  if (inst.family) {
    if (std::optional<long> known = known_ground_state(*inst.family)) return *known;
  }
  if (inst.graph.node_count() <= kMaxEnumerableNodes) return exact_max_cut(inst.graph).max_cut;
  throw ConfigError("target", "instance '" + inst.id + "' has " +
                                  std::to_string(inst.graph.node_count()) +
                                  " nodes, too many to enumerate; supply target=<cut>");
}

inline nlohmann::json entry_json(const BenchEntry& e, std::size_t n_epochs) {
  auto opt = [](const std::optional<std::size_t>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json j{{"algorithm", algorithm_name(e.algorithm)},
                   {"instance", e.instance},
                   {"nodes", e.nodes},
                   {"graph_hash", e.graph_hash},
                   {"target_exact", e.exact.target},
                   {"target_approx", e.approx ? nlohmann::json(e.approx->target) : nlohmann::json(nullptr)},
                   {"q1", opt(e.exact.q1)},
                   {"q25", opt(e.exact.q25)},
                   {"q50", opt(e.exact.q50)},
                   {"q75", opt(e.exact.q75)},
                   {"success_rate", e.exact.success_rate},
                   {"n_runs", e.exact.n_runs},
                   {"n_epochs", n_epochs}};
  if (e.approx) j["approx"] = stats_json(*e.approx);
  return j;
}

inline BenchOutput run_bench(const CliConfig& cfg) {
  if (cfg.n_runs < 1) throw ConfigError("n_runs", "must be >= 1");
  const std::vector<BenchInstance> instances = resolve_instances(cfg);
  std::vector<long> targets;
  for (const BenchInstance& inst : instances) targets.push_back(resolve_target(cfg, inst));

  BenchOutput out;
  nlohmann::json results = nlohmann::json::array();
  std::map<std::string, std::vector<std::pair<double, double>>> medians;

  for (std::size_t k = 0; k < instances.size(); ++k) {
    const BenchInstance& inst = instances[k];
    const std::string hash = graph_content_hash(inst.graph);
    const SolverConfig solver =
        cfg.solver_for(inst.family ? std::optional(inst.family->kind) : std::nullopt);
    for (Algorithm alg : cfg.algorithms) {
      std::vector<RunRecord> runs =
          run_ensemble(alg, inst.graph, inst.id, solver, cfg.n_runs, cfg.n_epochs, cfg.master_seed);
      BenchEntry entry{alg, inst.id, inst.graph.node_count(), hash,
                       epochs_to_target(runs, targets[k]), std::nullopt};
      if (cfg.target_approx) entry.approx = epochs_to_target(runs, *cfg.target_approx);
      if (entry.exact.q50) {
        medians[std::string(algorithm_name(alg))].emplace_back(
            static_cast<double>(entry.nodes), static_cast<double>(*entry.exact.q50));
      }
      results.push_back(entry_json(entry, cfg.n_epochs));
      out.entries.push_back(std::move(entry));
      out.records.insert(out.records.end(), std::make_move_iterator(runs.begin()),
                         std::make_move_iterator(runs.end()));
    }
  }

  nlohmann::json scaling = nlohmann::json::object();
  for (const auto& [alg, points] : medians) {
    if (points.size() < 3) continue;
    try {
      const FitResult lin = scaling_fit(points, FitModel::Linear);
      const FitResult quad = scaling_fit(points, FitModel::Quadratic);
      scaling[alg] = {{"linear", {{"coefficients", lin.coefficients}, {"rms", lin.rms_residual}}},
                      {"quadratic", {{"coefficients", quad.coefficients}, {"rms", quad.rms_residual}}}};
    } catch (const FitError&) {
    }
  }

  out.summary = {{"config", cfg.to_json()},
                 {"n_runs", cfg.n_runs},
                 {"n_epochs", cfg.n_epochs},
                 {"results", results},
                 {"scaling", scaling}};
  return out;
}

/// One cut-vs-epoch chart per instance (<prefix>-<instance>.svg) and, with
/// more than one instance, <prefix>-success.svg.
inline std::vector<std::filesystem::path> write_plots(const BenchOutput& bench,
                                                      const std::filesystem::path& prefix) {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> order;
  std::map<std::string, std::vector<CutSeries>> by_instance;
  for (const RunRecord& r : bench.records) {
    auto& series = by_instance[r.instance];
    if (series.empty()) order.push_back(r.instance);
    if (series.empty() || series.back().label != r.algorithm) series.push_back({r.algorithm, {}});
    series.back().runs.push_back(r);
  }
  for (const std::string& inst : order) {
    std::filesystem::path path = prefix;
    path += "-" + inst + ".svg";
    write_text_file(path, render_cut_svg(by_instance[inst], inst));
    written.push_back(path);
  }
  if (order.size() > 1) {
    std::vector<SuccessSeries> series;
    for (const BenchEntry& e : bench.entries) {
      const std::string label(algorithm_name(e.algorithm));
      auto it = std::find_if(series.begin(), series.end(),
                             [&](const SuccessSeries& s) { return s.label == label; });
      if (it == series.end()) it = series.insert(series.end(), SuccessSeries{label, {}});
      it->points.emplace_back(static_cast<double>(e.nodes), e.exact.success_rate);
    }
    std::filesystem::path path = prefix;
    path += "-success.svg";
    write_text_file(path, render_success_svg(series, "success rate"));
    written.push_back(path);
  }
  return written;
}

}  // namespace cits

#endif  // CITS_EXPERIMENT_HPP
