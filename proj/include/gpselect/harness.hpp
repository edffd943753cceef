#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpselect/item_store.hpp"
#include "gpselect/oracles.hpp"
#include "gpselect/selection.hpp"

namespace gpselect {

/// One policy requested in an experiment: GP-Select under some rule, or a
/// baseline.
struct PolicyRequest {
  bool is_baseline = false;
  Rule rule = Rule::uniform;          // GP-Select policies
  Baseline baseline = Baseline::random;
  double epsilon_fraction = 0.2;      // epsilon_first only
  std::string label;                  // unique name used in artifact files
};

enum class LazyMode { off, on, both };

struct DatasetSource {
  bool synthetic = true;
  // synthetic
  int n = 100;
  int d = 2;
  KernelSpec kernel;  // generation kernel
  double cost_min = 1.0;
  double cost_max = 1.0;
  std::uint64_t seed_offset = 0;  // instance seed = run seed + offset
  // file
  std::string path;
  FileFormat format = FileFormat::csv;
};

struct ExperimentConfig {
  DatasetSource dataset;
  KernelSpec kernel;                // model kernel
  std::vector<PolicyRequest> policies;
  BetaSchedule beta_schedule;
  double lambda = 0.0;
  double sigma_n = 1.0;
  double noise = 0.1;               // sigma_hat for oracle and model
  double budget = 10.0;
  std::vector<double> checkpoints;  // ascending, <= budget
  std::vector<std::uint64_t> seeds;
  Rule rule = Rule::uniform;
  LazyMode lazy = LazyMode::off;
  int failsafe_threshold = 0;
  int threads = 1;
  int jobs = 1;                     // concurrent (policy, seed) runs
  double dp_resolution = 0.01;
  std::string out_dir = "out";

  void validate() const;
};

/// Parses the JSON config file (schema in the README). `overrides` are
/// dotted key=value pairs applied on top, e.g. "budget=50" or
/// "beta.value=2". Throws std::invalid_argument naming the offending field.
ExperimentConfig load_experiment_config(const std::string& path,
                                        const std::vector<std::string>& overrides = {});
ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::vector<std::string>& overrides = {});

/// Canonical JSON echo of a config (stable key order) and its hash.
std::string config_to_json(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);

struct RunArtifacts {
  std::string manifest_path;
  std::vector<std::string> trace_paths;
  std::string regret_csv_path;
  std::string timing_csv_path;
};

/// Executes every (policy, seed, lazy-mode) combination, writing one
/// JSON-lines trace per run, an aggregated regret CSV, a timing CSV and a
/// manifest with config and dataset hashes. Byte-identical outputs for
/// identical configs and seeds, except wall-clock timing fields.
RunArtifacts run_experiment(const ExperimentConfig& config);

struct TradeoffRow {
  std::string policy;
  double lambda = 0.0;
  double value_sum = 0.0;   // sum of true values over the selected set
  double diversity = 0.0;   // D(S) at the run's sigma_n
};

struct TradeoffTable {
  std::vector<TradeoffRow> rows;  // one per run, plus greedy reference rows
};

/// Value/diversity tradeoff across runs that share a dataset (validated by
/// dataset hash); appends the known-f greedy reference at each lambda.
TradeoffTable compare_runs(const std::vector<std::string>& manifest_paths);
std::string tradeoff_csv(const TradeoffTable& table);

}  // namespace gpselect
