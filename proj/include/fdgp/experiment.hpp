#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fdgp/xcsf.hpp"

namespace fdgp {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100'000;
  int window = 50;  // exploit trials per metrics row
  int pop_size = 2000;  // P, the micro-classifier cap
  EngineConfig engine;
  std::string out_path;      // CSV, empty to skip
  std::string summary_path;  // JSON, empty to skip
};

/// Throws std::invalid_argument on an unknown key or unparsable value.
void apply_override(ExperimentConfig& config, std::string_view key, std::string_view value);

/// "key=value" form of apply_override.
void apply_override(ExperimentConfig& config, std::string_view assignment);

/// Throws std::invalid_argument describing the first bad field.
void validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct TrialRecord {
  bool explore = false;
  double input = 0.0;
  double action = 0.0;
  double payoff = 0.0;
  double prediction = 0.0;
  std::size_t match_set_size = 0;
  std::size_t action_set_size = 0;
};

struct MetricsRow {
  std::uint64_t trial = 0;
  double performance = 0.0;
  double error = 0.0;
  double macro_frac = 0.0;
  double avg_mu = 0.0;
  double avg_nodes = 0.0;
  double avg_conn = 0.0;
  double avg_t = 0.0;
};

/// One single-step Frog trial against the population.
TrialRecord run_trial(Population& pop, bool explore, std::uint64_t trial, SplitMix64& rng,
                      const EngineConfig& config);

/// Population statistics plus the given window means.
MetricsRow snapshot(const Population& pop, std::uint64_t trial, double performance,
                    double error);

/// Explore/exploit loop with windowed metrics. Trial 1 explores, trial 2
/// exploits, and so on.
class FrogExperiment {
 public:
  explicit FrogExperiment(ExperimentConfig config);

  /// Runs the next trial. A metrics row is appended after every `window`
  /// exploit trials.
  const TrialRecord& step();

  std::uint64_t trials_done() const noexcept { return trial_; }
  const Population& population() const noexcept { return pop_; }
  const std::vector<MetricsRow>& rows() const noexcept { return rows_; }
  const ExperimentConfig& config() const noexcept { return config_; }

 private:
  ExperimentConfig config_;
  Population pop_;
  std::uint64_t trial_ = 0;
  std::deque<double> payoffs_;
  std::deque<double> errors_;
  std::uint64_t exploit_count_ = 0;
  TrialRecord last_;
  std::vector<MetricsRow> rows_;
};

struct ExperimentResult {
  std::vector<MetricsRow> rows;
  nlohmann::json summary;
};

using TrialObserver = std::function<void(const Population&, const TrialRecord&)>;

/// Runs config.trials trials, then writes the CSV and summary if their paths
/// are set. Both outputs are opened before the first trial so a bad path
/// fails fast.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const TrialObserver& observer = {});

void emit_csv(const std::vector<MetricsRow>& rows, std::ostream& out);
void emit_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path);

}  // namespace fdgp
