#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fdgp/network.hpp"
#include "fdgp/random.hpp"

namespace fdgp {

struct XcsfParams {
  double beta = 0.2;    // learning rate for error, fitness and set size
  double eta = 0.2;     // prediction weight learning rate
  double x0 = 1.0;      // constant bias input
  double eps0 = 0.01;
  double alpha = 0.1;
  double nu = 5.0;
  int theta_ga = 25;
  int theta_del = 20;
  double delta = 0.1;
  double f_init = 0.01;
  double eps_init = 0.01;
  double action_window = 0.005;
  double p_floor = 1e-6;
  long covering_retry_cap = 1'000'000;
};

struct EngineConfig {
  XcsfParams xcsf;
  FlnConfig fln;
  int n_outputs = 1;
};

struct Classifier {
  FlnGenome genome;
  /// Bias weight, one weight per state dimension, then the action weight.
  std::vector<double> weights;
  double error = 0.0;
  double fitness = 0.01;
  int numerosity = 1;
  long experience = 0;
  double as_estimate = 1.0;
  std::uint64_t timestamp = 0;
};

struct Population {
  std::vector<Classifier> members;
  int max_micro = 2000;

  long micro_count() const noexcept;
  std::size_t size() const noexcept { return members.size(); }
};

/// A matching classifier, its proposed action and the prediction there.
struct MatchEntry {
  std::size_t index = 0;  // position in Population::members
  double action = 0.0;
  double match_degree = 0.0;
  double prediction = 0.0;
};

using MatchSet = std::vector<MatchEntry>;

/// Covering could not find a matching network within the retry cap.
class CoveringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double compute_prediction(const Classifier& cl, std::span<const double> state, double action,
                          double x0) noexcept;

/// Normalized delta rule on (x0, state..., action).
void update_weights(Classifier& cl, std::span<const double> state, double action,
                    double payoff, double eta, double x0) noexcept;

double accuracy(double error, const XcsfParams& params) noexcept;

Classifier covering(std::span<const double> state, std::uint64_t trial, SplitMix64& rng,
                    const EngineConfig& config);

/// Evaluates every member on its own substream keyed by its index. Members
/// whose match node ends at 0.5 or above join; covering fills an empty set.
MatchSet build_match_set(Population& pop, std::span<const double> state, std::uint64_t trial,
                         SplitMix64& rng, const EngineConfig& config);

/// Roulette on max(prediction, p_floor). Returns a position in mset.
std::size_t select_explore(const MatchSet& mset, SplitMix64& rng, double p_floor);

/// Argmax of prediction * accuracy, ties to the lowest population index.
std::size_t select_exploit(const MatchSet& mset, const Population& pop,
                           const XcsfParams& params);

/// Entries within action_window of mset[chosen], boundary inclusive.
MatchSet build_action_set(const MatchSet& mset, std::size_t chosen, double action_window);

void update_sets(Population& pop, const MatchSet& aset, const MatchSet& mset,
                 std::span<const double> state, double payoff, const XcsfParams& params);

/// Returns true when the GA fired.
bool run_ga(Population& pop, const MatchSet& aset, std::uint64_t trial, SplitMix64& rng,
            const EngineConfig& config);

/// Merges into a genomes_equal member or appends. Returns the member index.
std::size_t insert_classifier(Population& pop, Classifier cl);

void delete_to_limit(Population& pop, SplitMix64& rng, const XcsfParams& params);

}  // namespace fdgp
