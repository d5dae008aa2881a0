#ifndef CITS_CONFIG_HPP
#define CITS_CONFIG_HPP

// Flat key=value configuration shared by every CLI subcommand.
// Precedence: built-in defaults < config file < command-line flags.

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cits/bench.hpp"
#include "cits/cim.hpp"
#include "cits/errors.hpp"
#include "cits/graph.hpp"
#include "cits/tree_search.hpp"
#include "json.hpp"

namespace cits {

struct CliConfig {
  // Empty gains resolve per graph family (see apply_family_gains).
  std::optional<double> alpha;
  std::optional<double> beta;
  double noise_std = 0.1;
  std::size_t noise_epochs = 10;
  Dynamics dynamics = Dynamics::PoorMan;
  std::size_t depth = 2;
  std::size_t breadth = 2;
  Scheme scheme = Scheme::Naive;
  double t_star_init = 1.0;
  std::size_t n_epochs = 100;
  std::size_t n_runs = 100;
  std::uint64_t master_seed = 0;
  std::optional<GraphFamily> family;
  std::vector<std::size_t> sizes;
  std::optional<long> target;
  std::optional<long> target_approx;
  std::vector<Algorithm> algorithms{Algorithm::Sa, Algorithm::Cim, Algorithm::Cits};
  std::string graph;  // edge-list path; alternative to family + size

  static const std::vector<std::string_view>& keys() {
    static const std::vector<std::string_view> k{
        "alpha",     "beta",        "noise_std", "noise_epochs", "dynamics",
        "depth",     "breadth",     "scheme",    "t_star_init",  "n_epochs",
        "n_runs",    "master_seed", "family",    "size",         "target",
        "target_approx", "algorithms", "graph"};
    return k;
  }

  void set(std::string_view key, std::string_view value);

  /// Solver settings for a graph of the given family (nullopt: read from file).
  SolverConfig solver_for(std::optional<GraphFamily> graph_family) const {
    SolverConfig out;
    out.t_star_init = t_star_init;
    CimConfig& cim = out.cits.cim;
    apply_family_gains(cim, graph_family.value_or(GraphFamily::SquareLattice));
    if (alpha) cim.alpha = *alpha;
    if (beta) cim.beta = *beta;
    cim.noise_std = noise_std;
    cim.noise_epochs = noise_epochs;
    cim.dynamics = dynamics;
    out.cits.depth = depth;
    out.cits.breadth = breadth;
    out.cits.scheme = scheme;
    out.cits.t_star_init = t_star_init;
    return out;
  }

  nlohmann::json to_json() const {
    auto opt = [](const auto& v) -> nlohmann::json {
      return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json algs = nlohmann::json::array();
    for (Algorithm a : algorithms) algs.push_back(algorithm_name(a));
    return {{"alpha", opt(alpha)},
            {"beta", opt(beta)},
            {"noise_std", noise_std},
            {"noise_epochs", noise_epochs},
            {"dynamics", dynamics_name(dynamics)},
            {"depth", depth},
            {"breadth", breadth},
            {"scheme", scheme_name(scheme)},
            {"t_star_init", t_star_init},
            {"n_epochs", n_epochs},
            {"n_runs", n_runs},
            {"master_seed", master_seed},
            {"family", family ? nlohmann::json(family_name(*family)) : nlohmann::json(nullptr)},
            {"size", sizes},
            {"target", opt(target)},
            {"target_approx", opt(target_approx)},
            {"algorithms", algs},
            {"graph", graph}};
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value, std::string_view type_name) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (value.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError(std::string(key), "expected " + std::string(type_name) + ", got '" +
                                            std::string(value) + "'");
  }
  return out;
}

inline std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const std::size_t comma = std::min(value.find(',', pos), value.size());
    std::string_view item = trim(value.substr(pos, comma - pos));
    if (!item.empty()) out.push_back(item);
    pos = comma + 1;
  }
  return out;
}

template <typename Fn>
auto rethrow_as_config(std::string_view key, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string(key), e.what());
  }
}

}  // namespace detail

inline void CliConfig::set(std::string_view key, std::string_view raw) {
  using detail::parse_number;
  const std::string_view value = detail::trim(raw);
  const auto as_double = [&] { return parse_number<double>(key, value, "a number"); };
  const auto as_size = [&] { return parse_number<std::size_t>(key, value, "a non-negative integer"); };

  if (key == "alpha") {
    alpha = as_double();
  } else if (key == "beta") {
    beta = as_double();
  } else if (key == "noise_std") {
    noise_std = as_double();
  } else if (key == "noise_epochs") {
    noise_epochs = as_size();
  } else if (key == "dynamics") {
    dynamics = detail::rethrow_as_config(key, [&] { return parse_dynamics(value); });
  } else if (key == "depth") {
    depth = as_size();
  } else if (key == "breadth") {
    breadth = as_size();
  } else if (key == "scheme") {
    scheme = detail::rethrow_as_config(key, [&] { return parse_scheme(value); });
  } else if (key == "t_star_init") {
    t_star_init = as_double();
  } else if (key == "n_epochs") {
    n_epochs = as_size();
  } else if (key == "n_runs") {
    n_runs = as_size();
  } else if (key == "master_seed") {
    master_seed = parse_number<std::uint64_t>(key, value, "an unsigned 64-bit integer");
  } else if (key == "family") {
    family = detail::rethrow_as_config(key, [&] { return parse_family(value); });
  } else if (key == "size") {
    sizes.clear();
    for (std::string_view item : detail::split_list(value)) {
      sizes.push_back(parse_number<std::size_t>(key, item, "a list of non-negative integers"));
    }
  } else if (key == "target") {
    target = parse_number<long>(key, value, "an integer");
  } else if (key == "target_approx") {
    target_approx = parse_number<long>(key, value, "an integer");
  } else if (key == "algorithms") {
    algorithms.clear();
    for (std::string_view item : detail::split_list(value)) {
      algorithms.push_back(detail::rethrow_as_config(key, [&] { return parse_algorithm(item); }));
    }
    if (algorithms.empty()) throw ConfigError(std::string(key), "list is empty");
  } else if (key == "graph") {
    graph = std::string(value);
  } else {
    throw ConfigError(std::string(key), "unknown key");
  }
}

/// Applies "key = value" lines on top of `base`. Blank lines and '#'
/// comments are skipped. Errors name the key and the line.
inline CliConfig parse_config(std::string_view text, CliConfig base = {}) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = detail::trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    const std::string_view key = detail::trim(line.substr(0, eq));
    try {
      base.set(key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(e.key(), std::string(e.what()).substr(e.key().size() + 2) + " (line " +
                                     std::to_string(line_no) + ")");
    }
  }
  return base;
}

}  // namespace cits

#endif  // CITS_CONFIG_HPP
