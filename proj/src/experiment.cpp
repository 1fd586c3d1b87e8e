#include "fdgp/experiment.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "fdgp/frog.hpp"

namespace fdgp {

namespace {

double mean(const std::deque<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

nlohmann::json row_json(const MetricsRow& r) {
  return {{"trial", r.trial},         {"performance", r.performance},
          {"error", r.error},         {"macro_frac", r.macro_frac},
          {"avg_mu", r.avg_mu},       {"avg_nodes", r.avg_nodes},
          {"avg_conn", r.avg_conn},   {"avg_T", r.avg_t}};
}

std::ofstream open_for_writing(const std::filesystem::path& path, const char* what) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error(std::string("cannot open ") + what + " '" + path.string() +
                             "' for writing");
  }
  return out;
}

}  // namespace

TrialRecord run_trial(Population& pop, bool explore, std::uint64_t trial, SplitMix64& rng,
                      const EngineConfig& config) {
  const XcsfParams& params = config.xcsf;
  const double x = frog::sense(frog::sample_problem(rng));
  const std::array<double, 1> state{x};

  const MatchSet mset = build_match_set(pop, state, trial, rng, config);
  const std::size_t chosen =
      explore ? select_explore(mset, rng, params.p_floor) : select_exploit(mset, pop, params);
  const MatchSet aset = build_action_set(mset, chosen, params.action_window);

  TrialRecord record;
  record.explore = explore;
  record.input = x;
  record.action = mset[chosen].action;
  record.payoff = frog::payoff(x, record.action);
  record.prediction = mset[chosen].prediction;
  record.match_set_size = mset.size();
  record.action_set_size = aset.size();

  update_sets(pop, aset, mset, state, record.payoff, params);
  if (explore) run_ga(pop, aset, trial, rng, config);
  // Covering can push the population over its cap on exploit trials too.
  delete_to_limit(pop, rng, params);
  return record;
}

MetricsRow snapshot(const Population& pop, std::uint64_t trial, double performance,
                    double error) {
  MetricsRow row;
  row.trial = trial;
  row.performance = performance;
  row.error = error;
  row.macro_frac = static_cast<double>(pop.size()) / pop.max_micro;
  double micro = 0.0;
  for (const auto& cl : pop.members) {
    const double n = cl.numerosity;
    micro += n;
    row.avg_mu += n * cl.genome.mu;
    row.avg_nodes += n * cl.genome.total_nodes();
    row.avg_conn += n * cl.genome.connectivity();
    row.avg_t += n * cl.genome.updates;
  }
  if (micro > 0) {
    row.avg_mu /= micro;
    row.avg_nodes /= micro;
    row.avg_conn /= micro;
    row.avg_t /= micro;
  }
  return row;
}

FrogExperiment::FrogExperiment(ExperimentConfig config) : config_(std::move(config)) {
  validate(config_);
  pop_.max_micro = config_.pop_size;
}

const TrialRecord& FrogExperiment::step() {
  ++trial_;
  const bool explore = trial_ % 2 == 1;
  SplitMix64 rng = substream(config_.seed, trial_);
  last_ = run_trial(pop_, explore, trial_, rng, config_.engine);
  if (!explore) {
    const auto window = static_cast<std::size_t>(config_.window);
    payoffs_.push_back(last_.payoff);
    errors_.push_back(std::abs(last_.payoff - last_.prediction));
    if (payoffs_.size() > window) {
      payoffs_.pop_front();
      errors_.pop_front();
    }
    if (++exploit_count_ % window == 0) {
      rows_.push_back(snapshot(pop_, trial_, mean(payoffs_), mean(errors_)));
    }
  }
  return last_;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const TrialObserver& observer) {
  validate(config);
  std::ofstream csv;
  std::ofstream summary_file;
  if (!config.out_path.empty()) csv = open_for_writing(config.out_path, "CSV output");
  if (!config.summary_path.empty()) {
    summary_file = open_for_writing(config.summary_path, "summary output");
  }

  const auto start = std::chrono::steady_clock::now();
  FrogExperiment experiment(config);
  while (experiment.trials_done() < config.trials) {
    const TrialRecord& record = experiment.step();
    if (observer) observer(experiment.population(), record);
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  ExperimentResult result;
  result.rows = experiment.rows();
  result.summary["config"] = to_json(config);
  result.summary["trials_run"] = experiment.trials_done();
  result.summary["rows"] = result.rows.size();
  result.summary["final"] = result.rows.empty() ? nlohmann::json(nullptr)
                                                : row_json(result.rows.back());
  result.summary["macro_classifiers"] = experiment.population().size();
  result.summary["micro_classifiers"] = experiment.population().micro_count();
  result.summary["wall_clock_seconds"] = elapsed.count();

  if (csv.is_open()) {
    emit_csv(result.rows, csv);
    if (!csv.flush()) throw std::runtime_error("failed writing CSV '" + config.out_path + "'");
  }
  if (summary_file.is_open()) {
    summary_file << result.summary.dump(2) << '\n';
    if (!summary_file.flush()) {
      throw std::runtime_error("failed writing summary '" + config.summary_path + "'");
    }
  }
  return result;
}

void emit_csv(const std::vector<MetricsRow>& rows, std::ostream& out) {
  out << "trial,performance,error,macro_frac,avg_mu,avg_nodes,avg_conn,avg_T\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%llu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  static_cast<unsigned long long>(r.trial), r.performance, r.error,
                  r.macro_frac, r.avg_mu, r.avg_nodes, r.avg_conn, r.avg_t);
    out << line;
  }
}

void emit_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path, "CSV output");
  emit_csv(rows, out);
  if (!out.flush()) throw std::runtime_error("failed writing CSV '" + path.string() + "'");
}

}  // namespace fdgp
