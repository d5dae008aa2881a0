// cits: instance generation, single solves, ensemble benchmarks and exact
// MAX-CUT from the command line.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cits/cits.hpp"

namespace {

struct KeyFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_key_flags(CLI::App& cmd, KeyFlags& flags) {
  cmd.add_option("-c,--config", flags.config_path, "Flat key=value config file");
  for (std::string_view key : cits::CliConfig::keys()) {
    const std::string name(key);
    cmd.add_option("--" + name, flags.values[name], "Config key '" + name + "'");
  }
}

cits::CliConfig load_config(const CLI::App& cmd, const KeyFlags& flags) {
  cits::CliConfig cfg;
  if (!flags.config_path.empty()) cfg = cits::parse_config(cits::read_text_file(flags.config_path));
  for (std::string_view key : cits::CliConfig::keys()) {
    const std::string name(key);
    if (cmd.count("--" + name) > 0) cfg.set(name, flags.values.at(name));
  }
  return cfg;
}

int cmd_gen(const std::string& family, std::size_t size, const std::string& out_path) {
  const cits::CouplingGraph g = cits::make_graph({cits::parse_family(family), size});
  const std::string text = cits::write_edge_list(g);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    cits::write_text_file(out_path, text);
  }
  return 0;
}

int cmd_solve(const CLI::App& cmd, const KeyFlags& flags, const std::string& algorithm,
              const std::string& graph_path, const std::string& trajectory_path) {
  const cits::CliConfig cfg = load_config(cmd, flags);
  const cits::CouplingGraph g = cits::read_edge_list(cits::read_text_file(graph_path));
  const cits::SolverConfig solver = cfg.solver_for(cfg.family);
  const std::uint64_t seed = cits::derive_seed(cfg.master_seed, 0);
  cits::RunRecord record =
      cits::run_single(cits::parse_algorithm(algorithm), g, solver, cfg.n_epochs, seed);
  record.instance = std::filesystem::path(graph_path).stem().string();

  std::cout << "best_cut " << record.best_cut << '\n';
  if (auto epoch = cits::first_epoch_reaching(record, record.best_cut)) {
    std::cout << "best_epoch " << *epoch << '\n';
  }
  std::cout << "best_config " << record.best_config.str() << '\n';
  if (!trajectory_path.empty()) {
    cits::write_text_file(trajectory_path, cits::results_csv(std::span(&record, 1)));
  }
  return 0;
}

int cmd_bench(const CLI::App& cmd, const KeyFlags& flags, const std::string& out_prefix,
              const std::string& plot_prefix) {
  const cits::CliConfig cfg = load_config(cmd, flags);
  const cits::BenchOutput bench = cits::run_bench(cfg);
  cits::write_results(bench.records, bench.summary, out_prefix);
  if (!plot_prefix.empty()) cits::write_plots(bench, plot_prefix);

  for (const cits::BenchEntry& e : bench.entries) {
    auto show = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; };
    std::cout << cits::algorithm_name(e.algorithm) << ' ' << e.instance << " target "
              << e.exact.target << " q25/q50/q75 " << show(e.exact.q25) << '/'
              << show(e.exact.q50) << '/' << show(e.exact.q75) << " success "
              << e.exact.success_rate << '\n';
  }
  return 0;
}

int cmd_exact(const std::string& graph_path) {
  const cits::CouplingGraph g = cits::read_edge_list(cits::read_text_file(graph_path));
  const cits::ExactResult r = cits::exact_max_cut(g);
  std::cout << "max_cut " << r.max_cut << '\n'
            << "optimal_count " << r.argmax_count << '\n'
            << "witness " << r.witness.str() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ising MAX-CUT heuristics: annealing, coherent Ising machine, tree search"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cits::kVersion));

  std::string family;
  std::size_t size = 0;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Write a generated instance as an edge list");
  gen->add_option("family", family, "square-lattice | circular-ladder | mobius-ladder")->required();
  gen->add_option("size", size, "Side length or rung count")->required();
  gen->add_option("-o,--out", gen_out, "Output path (default: stdout)");

  std::string algorithm;
  std::string graph_path;
  std::string trajectory;
  KeyFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "Run one seeded solve on an edge-list graph");
  solve->add_option("algorithm", algorithm, "sa | cim | cits")
      ->required()
      ->check(CLI::IsMember({"sa", "cim", "cits"}));
  solve->add_option("graph-file", graph_path, "Edge-list file")->required();
  solve->add_option("-t,--trajectory", trajectory, "Write the cut trajectory CSV here");
  add_key_flags(*solve, solve_flags);

  std::string out_prefix = "bench";
  std::string plot_prefix;
  KeyFlags bench_flags;
  CLI::App* bench = app.add_subcommand("bench", "Run seeded ensembles over an instance grid");
  bench->add_option("-o,--out", out_prefix, "Writes <prefix>.csv and <prefix>.json");
  bench->add_option("--plot", plot_prefix, "Writes <prefix>-<instance>.svg charts");
  add_key_flags(*bench, bench_flags);

  std::string exact_path;
  CLI::App* exact = app.add_subcommand("exact", "Exhaustive MAX-CUT for graphs up to 30 nodes");
  exact->add_option("graph", exact_path, "Edge-list file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(family, size, gen_out);
    if (*solve) return cmd_solve(*solve, solve_flags, algorithm, graph_path, trajectory);
    if (*bench) return cmd_bench(*bench, bench_flags, out_prefix, plot_prefix);
    if (*exact) return cmd_exact(exact_path);
  } catch (const cits::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
