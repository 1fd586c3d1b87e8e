#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace fdgp {

/// Node logic of a fuzzy logic network. Values are the genome's function ids.
enum class FuzzyFunction : std::uint8_t {
  kOrMax = 0,       // max(x, y)
  kAndProduct = 1,  // x * y
  kAndMin = 2,      // min(x, y)
  kOrBounded = 3,   // min(1, x + y)
  kNot = 4,         // 1 - x
  kIdentity = 5,    // x
};

inline constexpr int kFunctionCount = 6;

/// Throws std::invalid_argument when id is outside [0, 5].
FuzzyFunction function_from_id(int id);

constexpr int function_id(FuzzyFunction f) noexcept { return static_cast<int>(f); }

std::string_view function_name(FuzzyFunction f) noexcept;

/// Folds the binary logic left to right over args. NOT and identity look at
/// args[0] only. args must be nonempty with every value in [0, 1].
double apply_function(FuzzyFunction f, std::span<const double> args) noexcept;

}  // namespace fdgp
