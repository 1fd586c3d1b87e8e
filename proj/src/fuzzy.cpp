#include "fdgp/fuzzy.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fdgp {

FuzzyFunction function_from_id(int id) {
  if (id < 0 || id >= kFunctionCount) {
    throw std::invalid_argument("fuzzy function id out of range: " + std::to_string(id));
  }
  return static_cast<FuzzyFunction>(id);
}

std::string_view function_name(FuzzyFunction f) noexcept {
  switch (f) {
    case FuzzyFunction::kOrMax: return "or_max";
    case FuzzyFunction::kAndProduct: return "and_product";
    case FuzzyFunction::kAndMin: return "and_min";
    case FuzzyFunction::kOrBounded: return "or_bounded";
    case FuzzyFunction::kNot: return "not";
    case FuzzyFunction::kIdentity: return "identity";
  }
  return "unknown";
}

double apply_function(FuzzyFunction f, std::span<const double> args) noexcept {
  double acc = args.front();
  const auto rest = args.subspan(1);
  switch (f) {
    case FuzzyFunction::kOrMax:
      for (double v : rest) acc = std::max(acc, v);
      return acc;
    case FuzzyFunction::kAndProduct:
      for (double v : rest) acc *= v;
      return acc;
    case FuzzyFunction::kAndMin:
      for (double v : rest) acc = std::min(acc, v);
      return acc;
    case FuzzyFunction::kOrBounded:
      for (double v : rest) acc = std::min(1.0, acc + v);
      return acc;
    case FuzzyFunction::kNot:
      return 1.0 - acc;
    case FuzzyFunction::kIdentity:
      return acc;
  }
  return acc;
}

}  // namespace fdgp
