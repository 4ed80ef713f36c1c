#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <vector>

#include "fairdiv/instance.hpp"
#include "fairdiv/strategy.hpp"

namespace fairdiv {

/// Deterministic RNG wrapper; the mt19937_64 stream is pinned by the
/// standard, so seeds reproduce bit-for-bit everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  /// Uniform-ish draw in [lo, hi] (plain modulo; determinism is the point).
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Ranking ranking(int m);  // uniform permutation via Fisher-Yates

 private:
  std::mt19937_64 eng_;
};

struct GenConfig {
  int agents = 2;
  int goods = 4;
  long long value_lo = 0;
  long long value_hi = 9;
  int count = 1;
  std::uint64_t seed = 0;
  bool strict = false;      // reject rows with repeated values
  bool force_ties = false;  // plant at least one tie per agent
};

std::vector<Instance> gen_instances(const GenConfig& config);
Instance gen_instance(const GenConfig& config, Rng& rng);

struct Family {
  int agents;
  int goods;
  int count;
};

struct ExperimentConfig {
  std::string theorem;
  std::vector<Family> families;
  long long value_lo = 0;
  long long value_hi = 9;
  std::uint64_t seed = 0;
  bool strict = false;
  bool force_ties = false;
  Budgets budgets;
};

/// The pinned configuration each theorem is verified with. count_override
/// rescales every family (useful for quick runs); <= 0 keeps the defaults.
ExperimentConfig default_experiment(const std::string& theorem,
                                    std::uint64_t seed,
                                    int count_override = 0);

std::vector<std::string> known_theorems();

struct InstanceVerdict {
  long long index = 0;
  std::string status;  // "pass" | "fail" | "skip"
  std::string message;
  nlohmann::json counterexample;  // self-contained re-runnable dump on fail
};

struct ExperimentReport {
  std::string theorem;
  std::uint64_t seed = 0;
  std::vector<InstanceVerdict> verdicts;
  long long passed = 0, failed = 0, skipped = 0;
  nlohmann::json extra;   // aggregate counters specific to the check
  double wall_seconds = 0;  // diagnostics only; never serialized
};

ExperimentReport run_experiment(const ExperimentConfig& config);

nlohmann::json report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

}  // namespace fairdiv
