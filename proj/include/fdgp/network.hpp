#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fdgp/fuzzy.hpp"
#include "fdgp/random.hpp"

namespace fdgp {

inline constexpr int kMaxConnections = 5;

/// Bounds shared by every genome of a run.
struct FlnConfig {
  int t_min = 1;            // fewest update events per evaluation
  int t_max = 50;           // most update events per evaluation
  double mu_min = 0.0005;   // floor of the self-adaptive mutation rate
  int max_nodes = 20;       // input slots + executable nodes
  double s_init = 0.5;      // state of every executable node before a run
};

/// One executable node. Connection value 0 is "no input", 1..n_inputs address
/// the clamped inputs and n_inputs+1.. address executable nodes by position.
struct FlnNode {
  FuzzyFunction function = FuzzyFunction::kIdentity;
  std::array<int, kMaxConnections> connections{};

  bool operator==(const FlnNode&) const = default;
};

/// Evolvable network. nodes[0] is the match node, nodes[1..n_outputs] are the
/// action outputs, anything after that is hidden.
struct FlnGenome {
  int n_inputs = 0;
  int n_outputs = 0;
  std::vector<FlnNode> nodes;
  int updates = 1;  // T: asynchronous single-node update events
  double mu = 1.0;

  /// N: input slots plus executable nodes.
  int total_nodes() const noexcept { return n_inputs + static_cast<int>(nodes.size()); }
  int hidden_count() const noexcept {
    return static_cast<int>(nodes.size()) - 1 - n_outputs;
  }
  /// Connection value addressing executable node i.
  int address_of(std::size_t i) const noexcept {
    return n_inputs + 1 + static_cast<int>(i);
  }
  /// Mean number of non-zero connections per executable node.
  double connectivity() const noexcept;
};

/// Structural equality: everything except mu.
bool genomes_equal(const FlnGenome& a, const FlnGenome& b) noexcept;

/// Empty string when every genome invariant holds, otherwise the first
/// violation found.
std::string check_invariants(const FlnGenome& genome, const FlnConfig& config);

struct NetworkOutput {
  double match_degree = 0.0;
  std::vector<double> actions;
};

/// New state of executable node `index` against the current network state.
/// A node with no active connection keeps its current value.
double node_output(const FlnGenome& genome, std::size_t index, std::span<const double> state,
                   std::span<const double> input) noexcept;

/// Runs genome.updates asynchronous events from s_init and returns the final
/// state of every executable node. `state` is resized and overwritten.
void simulate(const FlnGenome& genome, std::span<const double> input, SplitMix64& rng,
              double s_init, std::vector<double>& state);

NetworkOutput run_network(const FlnGenome& genome, std::span<const double> input,
                          SplitMix64& rng, const FlnConfig& config);

/// Minimal genome: match node and outputs only, every gene uniform.
FlnGenome random_genome(int n_inputs, int n_outputs, SplitMix64& rng, const FlnConfig& config);

/// Self-adapts mu (lognormal step, clamped) and then mutates genes, T and
/// topology at the new rate.
FlnGenome mutate_genome(const FlnGenome& parent, SplitMix64& rng, const FlnConfig& config);

/// Drops hidden node `index` (position in nodes). References to it become 0
/// and later addresses shift down by one.
void remove_hidden_node(FlnGenome& genome, std::size_t index);

}  // namespace fdgp
