#include "fdgp/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fdgp {

double FlnGenome::connectivity() const noexcept {
  if (nodes.empty()) return 0.0;
  std::size_t active = 0;
  for (const auto& node : nodes) {
    active += static_cast<std::size_t>(
        std::count_if(node.connections.begin(), node.connections.end(),
                      [](int c) { return c != 0; }));
  }
  return static_cast<double>(active) / static_cast<double>(nodes.size());
}

bool genomes_equal(const FlnGenome& a, const FlnGenome& b) noexcept {
  return a.n_inputs == b.n_inputs && a.n_outputs == b.n_outputs && a.updates == b.updates &&
         a.nodes == b.nodes;
}

std::string check_invariants(const FlnGenome& genome, const FlnConfig& config) {
  if (genome.n_inputs < 1) return "n_inputs must be at least 1";
  if (genome.n_outputs < 1) return "n_outputs must be at least 1";
  if (genome.nodes.size() < static_cast<std::size_t>(1 + genome.n_outputs)) {
    return "match and output nodes missing";
  }
  const int n = genome.total_nodes();
  if (n > config.max_nodes) {
    return "node count " + std::to_string(n) + " exceeds " + std::to_string(config.max_nodes);
  }
  if (genome.updates < config.t_min || genome.updates > config.t_max) {
    return "T " + std::to_string(genome.updates) + " outside bounds";
  }
  if (!(genome.mu >= config.mu_min && genome.mu <= 1.0)) {
    return "mu " + std::to_string(genome.mu) + " outside bounds";
  }
  for (std::size_t i = 0; i < genome.nodes.size(); ++i) {
    for (int c : genome.nodes[i].connections) {
      if (c < 0 || c > n) {
        return "node " + std::to_string(i) + " connection " + std::to_string(c) +
               " outside [0, " + std::to_string(n) + "]";
      }
    }
  }
  return {};
}

double node_output(const FlnGenome& genome, std::size_t index, std::span<const double> state,
                   std::span<const double> input) noexcept {
  std::array<double, kMaxConnections> args;
  std::size_t count = 0;
  const int n_inputs = genome.n_inputs;
  for (int c : genome.nodes[index].connections) {
    if (c == 0) continue;
    args[count++] = c <= n_inputs ? input[static_cast<std::size_t>(c - 1)]
                                  : state[static_cast<std::size_t>(c - n_inputs - 1)];
  }
  if (count == 0) return state[index];
  return apply_function(genome.nodes[index].function,
                        std::span<const double>(args.data(), count));
}

namespace {

// values[c - 1] holds the value behind connection c: inputs first, then node
// states. Returns false when the node has no active connection.
bool fold_node(const FlnNode& node, const double* values, double& out) noexcept {
  const auto& cs = node.connections;
  std::size_t k = 0;
  while (k < cs.size() && cs[k] == 0) ++k;
  if (k == cs.size()) return false;
  double acc = values[cs[k] - 1];
  switch (node.function) {
    case FuzzyFunction::kOrMax:
      for (++k; k < cs.size(); ++k) {
        if (cs[k] != 0) acc = std::max(acc, values[cs[k] - 1]);
      }
      break;
    case FuzzyFunction::kAndProduct:
      for (++k; k < cs.size(); ++k) {
        if (cs[k] != 0) acc *= values[cs[k] - 1];
      }
      break;
    case FuzzyFunction::kAndMin:
      for (++k; k < cs.size(); ++k) {
        if (cs[k] != 0) acc = std::min(acc, values[cs[k] - 1]);
      }
      break;
    case FuzzyFunction::kOrBounded:
      for (++k; k < cs.size(); ++k) {
        if (cs[k] != 0) acc = std::min(1.0, acc + values[cs[k] - 1]);
      }
      break;
    case FuzzyFunction::kNot:
      acc = 1.0 - acc;
      break;
    case FuzzyFunction::kIdentity:
      break;
  }
  out = acc;
  return true;
}

}  // namespace

void simulate(const FlnGenome& genome, std::span<const double> input, SplitMix64& rng,
              double s_init, std::vector<double>& state) {
  const auto n_inputs = static_cast<std::size_t>(genome.n_inputs);
  const auto size = static_cast<std::uint32_t>(genome.nodes.size());
  state.resize(n_inputs + size);
  std::copy(input.begin(), input.end(), state.begin());
  std::fill(state.begin() + static_cast<std::ptrdiff_t>(n_inputs), state.end(), s_init);
  double* values = state.data();
  for (int event = 0; event < genome.updates; ++event) {
    const std::uint32_t i = rng.below(size);
    fold_node(genome.nodes[i], values, values[n_inputs + i]);
  }
  state.erase(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(n_inputs));
}

NetworkOutput run_network(const FlnGenome& genome, std::span<const double> input,
                          SplitMix64& rng, const FlnConfig& config) {
  std::vector<double> state;
  simulate(genome, input, rng, config.s_init, state);
  NetworkOutput out;
  out.match_degree = state[0];
  out.actions.assign(state.begin() + 1, state.begin() + 1 + genome.n_outputs);
  return out;
}

namespace {

FlnNode random_node(int total_nodes, SplitMix64& rng) {
  FlnNode node;
  node.function = static_cast<FuzzyFunction>(rng.below(kFunctionCount));
  for (int& c : node.connections) c = rng.between(0, total_nodes);
  return node;
}

}  // namespace

FlnGenome random_genome(int n_inputs, int n_outputs, SplitMix64& rng, const FlnConfig& config) {
  FlnGenome g;
  g.n_inputs = n_inputs;
  g.n_outputs = n_outputs;
  const int total = n_inputs + 1 + n_outputs;
  g.nodes.reserve(static_cast<std::size_t>(1 + n_outputs));
  for (int i = 0; i < 1 + n_outputs; ++i) g.nodes.push_back(random_node(total, rng));
  g.updates = rng.between(config.t_min, config.t_max);
  g.mu = config.mu_min + (1.0 - config.mu_min) * rng.uniform();
  return g;
}

void remove_hidden_node(FlnGenome& genome, std::size_t index) {
  const int removed = genome.address_of(index);
  genome.nodes.erase(genome.nodes.begin() + static_cast<std::ptrdiff_t>(index));
  for (auto& node : genome.nodes) {
    for (int& c : node.connections) {
      if (c == removed) {
        c = 0;
      } else if (c > removed) {
        --c;
      }
    }
  }
}

FlnGenome mutate_genome(const FlnGenome& parent, SplitMix64& rng, const FlnConfig& config) {
  FlnGenome child = parent;
  const double g = std::normal_distribution<double>(0.0, 1.0)(rng);
  child.mu = std::clamp(parent.mu * std::exp(g), config.mu_min, 1.0);
  const double rate = child.mu;

  const int n = child.total_nodes();
  for (auto& node : child.nodes) {
    if (rng.chance(rate)) node.function = static_cast<FuzzyFunction>(rng.below(kFunctionCount));
    for (int& c : node.connections) {
      if (rng.chance(rate)) c = rng.between(0, n);
    }
  }

  if (rng.chance(rate)) {
    const int step = rng.chance(0.5) ? 1 : -1;
    child.updates = std::clamp(child.updates + step, config.t_min, config.t_max);
  }

  if (rng.chance(rate) && child.total_nodes() < config.max_nodes) {
    child.nodes.push_back(random_node(child.total_nodes() + 1, rng));
  }

  if (rng.chance(rate) && child.hidden_count() > 0) {
    const auto first_hidden = static_cast<std::size_t>(1 + child.n_outputs);
    const auto pick = rng.below(static_cast<std::uint32_t>(child.hidden_count()));
    remove_hidden_node(child, first_hidden + static_cast<std::size_t>(pick));
  }
  return child;
}

}  // namespace fdgp
