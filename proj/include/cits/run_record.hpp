#ifndef CITS_RUN_RECORD_HPP
#define CITS_RUN_RECORD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cits/graph.hpp"

namespace cits {

/// Trajectory of one seeded solve. cuts_per_epoch holds the running
/// maximum, so best_cut == cuts_per_epoch.back() for a non-empty run.
struct RunRecord {
  std::string algorithm;
  std::string instance;
  std::uint64_t seed = 0;
  std::vector<long> cuts_per_epoch;
  long best_cut = 0;
  SpinConfig best_config;
};

namespace detail {

/// Running-max bookkeeping shared by the three solvers.
class TrajectoryRecorder {
 public:
  TrajectoryRecorder(std::string algorithm, std::uint64_t seed, std::size_t n,
                     std::size_t n_epochs) {
    record_.algorithm = std::move(algorithm);
    record_.seed = seed;
    record_.best_config = SpinConfig(n);
    record_.cuts_per_epoch.reserve(n_epochs);
  }

  void observe(const CouplingGraph& g, const SpinConfig& s) {
    const long cut = cut_value(g, s);
    if (record_.cuts_per_epoch.empty() || cut > record_.best_cut) {
      record_.best_cut = cut;
      record_.best_config = s;
    }
    record_.cuts_per_epoch.push_back(record_.best_cut);
  }

  RunRecord finish() && { return std::move(record_); }

 private:
  RunRecord record_;
};

}  // namespace detail
}  // namespace cits

#endif  // CITS_RUN_RECORD_HPP
