#include "fdgp/xcsf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace fdgp {

namespace {

constexpr std::uint64_t kCoverStreamKey = ~std::uint64_t{0};

// Returns a position in weights; weights must have a positive sum.
std::size_t roulette(std::span<const double> weights, SplitMix64& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double target = rng.uniform() * total;
  double running = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    running += weights[i];
    if (target < running) return i;
  }
  return weights.size() - 1;
}

struct Covered {
  Classifier classifier;
  NetworkOutput output;
};

Covered cover(std::span<const double> state, std::uint64_t trial, SplitMix64& rng,
              const EngineConfig& config) {
  const int n_inputs = static_cast<int>(state.size());
  for (long attempt = 0; attempt < config.xcsf.covering_retry_cap; ++attempt) {
    FlnGenome genome = random_genome(n_inputs, config.n_outputs, rng, config.fln);
    NetworkOutput out = run_network(genome, state, rng, config.fln);
    if (out.match_degree < 0.5) continue;
    Classifier cl;
    cl.genome = std::move(genome);
    cl.weights.assign(state.size() + 2, 0.0);
    cl.error = config.xcsf.eps_init;
    cl.fitness = config.xcsf.f_init;
    cl.numerosity = 1;
    cl.experience = 0;
    cl.as_estimate = 1.0;
    cl.timestamp = trial;
    return {std::move(cl), std::move(out)};
  }
  throw CoveringError("covering found no matching network in " +
                      std::to_string(config.xcsf.covering_retry_cap) + " attempts");
}

}  // namespace

long Population::micro_count() const noexcept {
  long total = 0;
  for (const auto& cl : members) total += cl.numerosity;
  return total;
}

double compute_prediction(const Classifier& cl, std::span<const double> state, double action,
                          double x0) noexcept {
  double p = cl.weights.front() * x0;
  for (std::size_t i = 0; i < state.size(); ++i) p += cl.weights[i + 1] * state[i];
  return p + cl.weights.back() * action;
}

void update_weights(Classifier& cl, std::span<const double> state, double action,
                    double payoff, double eta, double x0) noexcept {
  double norm = x0 * x0 + action * action;
  for (double s : state) norm += s * s;
  const double step = eta / norm * (payoff - compute_prediction(cl, state, action, x0));
  cl.weights.front() += step * x0;
  for (std::size_t i = 0; i < state.size(); ++i) cl.weights[i + 1] += step * state[i];
  cl.weights.back() += step * action;
}

double accuracy(double error, const XcsfParams& params) noexcept {
  if (error < params.eps0) return 1.0;
  return params.alpha * std::pow(error / params.eps0, -params.nu);
}

Classifier covering(std::span<const double> state, std::uint64_t trial, SplitMix64& rng,
                    const EngineConfig& config) {
  return cover(state, trial, rng, config).classifier;
}

MatchSet build_match_set(Population& pop, std::span<const double> state, std::uint64_t trial,
                         SplitMix64& rng, const EngineConfig& config) {
  const std::uint64_t base = rng();
  const double x0 = config.xcsf.x0;
  MatchSet mset;
  std::vector<double> node_state;
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    const Classifier& cl = pop.members[i];
    SplitMix64 stream = substream(base, i);
    simulate(cl.genome, state, stream, config.fln.s_init, node_state);
    if (node_state[0] < 0.5) continue;
    const double action = node_state[1];
    mset.push_back({i, action, node_state[0], compute_prediction(cl, state, action, x0)});
  }
  if (mset.empty()) {
    SplitMix64 stream = substream(base, kCoverStreamKey);
    Covered covered = cover(state, trial, stream, config);
    const double action = covered.output.actions.front();
    const std::size_t index = insert_classifier(pop, std::move(covered.classifier));
    mset.push_back({index, action, covered.output.match_degree,
                    compute_prediction(pop.members[index], state, action, x0)});
  }
  return mset;
}

std::size_t select_explore(const MatchSet& mset, SplitMix64& rng, double p_floor) {
  std::vector<double> weights(mset.size());
  std::transform(mset.begin(), mset.end(), weights.begin(),
                 [p_floor](const MatchEntry& e) { return std::max(e.prediction, p_floor); });
  return roulette(weights, rng);
}

std::size_t select_exploit(const MatchSet& mset, const Population& pop,
                           const XcsfParams& params) {
  std::size_t best = 0;
  double best_value = -INFINITY;
  for (std::size_t i = 0; i < mset.size(); ++i) {
    const double value =
        mset[i].prediction * accuracy(pop.members[mset[i].index].error, params);
    if (value > best_value || (value == best_value && mset[i].index < mset[best].index)) {
      best = i;
      best_value = value;
    }
  }
  return best;
}

MatchSet build_action_set(const MatchSet& mset, std::size_t chosen, double action_window) {
  const double center = mset[chosen].action;
  // Inclusive boundary; the slack absorbs decimal-to-binary rounding so that
  // e.g. 0.505 counts as within 0.005 of 0.5.
  const double limit = action_window + 1e-12;
  MatchSet aset;
  for (std::size_t i = 0; i < mset.size(); ++i) {
    if (i == chosen || std::abs(mset[i].action - center) <= limit) {
      aset.push_back(mset[i]);
    }
  }
  return aset;
}

void update_sets(Population& pop, const MatchSet& aset, const MatchSet& mset,
                 std::span<const double> state, double payoff, const XcsfParams& params) {
  long aset_micro = 0;
  for (const auto& e : aset) aset_micro += pop.members[e.index].numerosity;

  for (const auto& e : aset) {
    Classifier& cl = pop.members[e.index];
    ++cl.experience;
    const double rate = std::max(params.beta, 1.0 / static_cast<double>(cl.experience));
    update_weights(cl, state, e.action, payoff, params.eta, params.x0);
    cl.error += rate * (std::abs(payoff - e.prediction) - cl.error);
    cl.as_estimate += rate * (static_cast<double>(aset_micro) - cl.as_estimate);
  }

  double accuracy_sum = 0.0;
  for (const auto& e : mset) {
    const Classifier& cl = pop.members[e.index];
    accuracy_sum += accuracy(cl.error, params) * cl.numerosity;
  }
  for (const auto& e : aset) {
    Classifier& cl = pop.members[e.index];
    const double relative = accuracy(cl.error, params) * cl.numerosity / accuracy_sum;
    cl.fitness += params.beta * (relative - cl.fitness);
  }
}

bool run_ga(Population& pop, const MatchSet& aset, std::uint64_t trial, SplitMix64& rng,
            const EngineConfig& config) {
  const XcsfParams& params = config.xcsf;
  double stamp_sum = 0.0;
  double micro = 0.0;
  for (const auto& e : aset) {
    const Classifier& cl = pop.members[e.index];
    stamp_sum += static_cast<double>(cl.timestamp) * cl.numerosity;
    micro += cl.numerosity;
  }
  if (static_cast<double>(trial) - stamp_sum / micro <= params.theta_ga) return false;

  std::vector<double> fitness;
  fitness.reserve(aset.size());
  for (const auto& e : aset) {
    pop.members[e.index].timestamp = trial;
    fitness.push_back(pop.members[e.index].fitness);
  }

  std::array<Classifier, 2> offspring;
  for (auto& child : offspring) {
    const Classifier& parent = pop.members[aset[roulette(fitness, rng)].index];
    child.genome = mutate_genome(parent.genome, rng, config.fln);
    child.weights.assign(parent.weights.size(), 0.0);
    child.error = params.eps_init;
    child.fitness = params.f_init;
    child.numerosity = 1;
    child.experience = 0;
    child.as_estimate = parent.as_estimate;
    child.timestamp = trial;
  }
  for (auto& child : offspring) insert_classifier(pop, std::move(child));
  delete_to_limit(pop, rng, params);
  return true;
}

std::size_t insert_classifier(Population& pop, Classifier cl) {
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    if (genomes_equal(pop.members[i].genome, cl.genome)) {
      ++pop.members[i].numerosity;
      return i;
    }
  }
  pop.members.push_back(std::move(cl));
  return pop.members.size() - 1;
}

void delete_to_limit(Population& pop, SplitMix64& rng, const XcsfParams& params) {
  long micro = pop.micro_count();
  std::vector<double> votes;
  while (micro > pop.max_micro) {
    double fitness_sum = 0.0;
    for (const auto& cl : pop.members) fitness_sum += cl.fitness;
    const double mean_fitness = fitness_sum / static_cast<double>(micro);

    votes.clear();
    for (const auto& cl : pop.members) {
      double vote = cl.as_estimate * cl.numerosity;
      const double micro_fitness = cl.fitness / cl.numerosity;
      if (cl.experience > params.theta_del && micro_fitness < params.delta * mean_fitness) {
        vote *= mean_fitness / micro_fitness;
      }
      votes.push_back(vote);
    }
    const std::size_t victim = roulette(votes, rng);
    if (--pop.members[victim].numerosity == 0) {
      pop.members.erase(pop.members.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    --micro;
  }
}

}  // namespace fdgp
