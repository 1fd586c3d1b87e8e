#pragma once

#include "fdgp/random.hpp"

namespace fdgp::frog {

/// Fly distance d in [0, 1].
struct FrogProblem {
  double distance = 0.0;
};

inline FrogProblem sample_problem(SplitMix64& rng) noexcept { return {rng.uniform()}; }

/// x(d) = 1 - d
inline double sense(const FrogProblem& p) noexcept { return 1.0 - p.distance; }

inline double payoff(double x, double a) noexcept {
  const double s = x + a;
  return s <= 1.0 ? s : 2.0 - s;
}

inline double optimal_action(double x) noexcept { return 1.0 - x; }

}  // namespace fdgp::frog
