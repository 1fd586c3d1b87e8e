#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "fdgp/fuzzy.hpp"
#include "fdgp/random.hpp"

using namespace fdgp;

namespace {

double apply(int id, std::vector<double> args) { return apply_function(function_from_id(id), args); }

// Binary logic written out independently of the fold.
double binary_logic(int id, double x, double y) {
  switch (id) {
    case 0: return x > y ? x : y;
    case 1: return x * y;
    case 2: return x < y ? x : y;
    case 3: return x + y < 1.0 ? x + y : 1.0;
    case 4: return 1.0 - x;
    default: return x;
  }
}

}  // namespace

TEST_CASE("logic table values") {
  CHECK(apply(0, {0.3, 0.7}) == 0.7);
  CHECK(apply(1, {0.5, 0.4}) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(apply(2, {0.3, 0.7}) == 0.3);
  CHECK(apply(3, {0.8, 0.8}) == 1.0);
  CHECK(apply(4, {0.25}) == 0.75);
  CHECK(apply(5, {0.42}) == 0.42);
}

TEST_CASE("fold over more than two arguments") {
  CHECK(apply(0, {0.1, 0.9, 0.4}) == 0.9);
  CHECK(apply(1, {0.5, 0.5, 0.5}) == 0.125);
  CHECK(apply(2, {0.6, 0.2, 0.9, 0.3}) == 0.2);
  CHECK(apply(3, {0.2, 0.2, 0.2}) == doctest::Approx(0.6));
  CHECK(apply(3, {0.7, 0.7, 0.1}) == 1.0);
  SUBCASE("NOT and identity only read the first argument") {
    CHECK(apply(4, {0.2, 0.9, 0.9}) == 0.8);
    CHECK(apply(5, {0.2, 0.9}) == 0.2);
  }
}

TEST_CASE("function ids") {
  for (int id = 0; id < kFunctionCount; ++id) CHECK(function_id(function_from_id(id)) == id);
  CHECK_THROWS_AS(function_from_id(-1), std::invalid_argument);
  CHECK_THROWS_AS(function_from_id(6), std::invalid_argument);
  CHECK(function_name(FuzzyFunction::kNot) == "not");
}

TEST_CASE("closure over [0,1] on random cases") {
  SplitMix64 rng(2024);
  std::vector<double> args;
  for (int trial = 0; trial < 100'000; ++trial) {
    const int id = static_cast<int>(rng.below(kFunctionCount));
    args.resize(1 + rng.below(5));
    for (double& a : args) a = rng.uniform();
    // Exact endpoints show up often enough to matter.
    if (rng.chance(0.1)) args[rng.below(static_cast<std::uint32_t>(args.size()))] = 1.0;
    if (rng.chance(0.1)) args[rng.below(static_cast<std::uint32_t>(args.size()))] = 0.0;
    const double out = apply(id, args);
    REQUIRE(out >= 0.0);
    REQUIRE(out <= 1.0);
  }
}

TEST_CASE("pairwise cases equal the binary formulas exactly") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 100'000; ++trial) {
    const int id = static_cast<int>(rng.below(kFunctionCount));
    const double x = rng.uniform();
    const double y = rng.uniform();
    REQUIRE(apply(id, {x, y}) == binary_logic(id, x, y));
  }
}
