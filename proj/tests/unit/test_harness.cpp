#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fdgp/experiment.hpp"
#include "fdgp/frog.hpp"

using namespace fdgp;

namespace {

ExperimentConfig small_config(std::uint64_t seed = 5, std::uint64_t trials = 400, int window = 10) {
  ExperimentConfig config;
  config.seed = seed;
  config.trials = trials;
  config.window = window;
  return config;
}

std::string csv_text(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  emit_csv(rows, out);
  return out.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fdgp_test_" + name);
}

}  // namespace

TEST_CASE("exploit trial with an oracle classifier is optimal") {
  // Match node holds s_init and always matches; the output jumps 1 - x.
  Classifier oracle;
  oracle.genome = {1,
                   1,
                   {FlnNode{FuzzyFunction::kIdentity, {0, 0, 0, 0, 0}},
                    FlnNode{FuzzyFunction::kNot, {1, 0, 0, 0, 0}}},
                   50,
                   0.5};
  oracle.weights = {1.0, 0.0, 0.0};
  oracle.error = 0.0;

  const EngineConfig config;
  for (std::uint64_t t = 2; t < 200; t += 2) {
    Population pop;
    pop.members.push_back(oracle);
    SplitMix64 rng = substream(9, t);
    const auto record = run_trial(pop, false, t, rng, config);
    CHECK_FALSE(record.explore);
    CHECK(record.match_set_size == 1);
    CHECK(record.action == doctest::Approx(frog::optimal_action(record.input)).epsilon(1e-12));
    CHECK(record.payoff == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(record.prediction == 1.0);
    CHECK(pop.size() == 1);
  }
}

TEST_CASE("experiment rows") {
  SUBCASE("two trials with a window of one give one row") {
    const auto result = run_experiment(small_config(1, 2, 1));
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].trial == 2);
  }
  SUBCASE("explore trials never enter the window") {
    FrogExperiment experiment(small_config(3, 100, 1));
    for (int t = 1; t <= 40; ++t) {
      const auto rows_before = experiment.rows().size();
      const auto& record = experiment.step();
      CHECK(record.explore == (t % 2 == 1));
      CHECK(experiment.rows().size() == rows_before + (record.explore ? 0 : 1));
      if (!record.explore) CHECK(experiment.rows().back().performance == record.payoff);
    }
  }
  SUBCASE("performance and error are means of the last W exploit trials") {
    const int window = 7;
    auto config = small_config(11, 600, window);
    std::vector<double> payoffs;
    std::vector<double> errors;
    std::vector<std::size_t> members_at_row;
    std::vector<long> micro_at_row;
    run_experiment(config, [&](const Population& pop, const TrialRecord& r) {
      if (r.explore) return;
      payoffs.push_back(r.payoff);
      errors.push_back(std::abs(r.payoff - r.prediction));
      if (payoffs.size() % window == 0) {
        members_at_row.push_back(pop.size());
        micro_at_row.push_back(pop.micro_count());
      }
    });
    const auto result = run_experiment(config);
    REQUIRE(result.rows.size() == payoffs.size() / window);
    for (std::size_t k = 0; k < result.rows.size(); ++k) {
      const auto end = payoffs.begin() + static_cast<std::ptrdiff_t>((k + 1) * window);
      const double perf = std::accumulate(end - window, end, 0.0) / window;
      const auto err_end = errors.begin() + static_cast<std::ptrdiff_t>((k + 1) * window);
      const double err = std::accumulate(err_end - window, err_end, 0.0) / window;
      const auto& row = result.rows[k];
      CHECK(row.trial == 2 * (k + 1) * window);
      CHECK(row.performance == doctest::Approx(perf).epsilon(1e-14));
      CHECK(row.error == doctest::Approx(err).epsilon(1e-14));
      CHECK(row.macro_frac * config.pop_size == doctest::Approx(members_at_row[k]));
      CHECK(micro_at_row[k] <= config.pop_size);
      CHECK(row.performance >= 0.0);
      CHECK(row.performance <= 1.0);
      CHECK(row.macro_frac > 0.0);
      CHECK(row.macro_frac <= 1.0);
    }
  }
}

TEST_CASE("equal seeds give identical runs") {
  std::vector<TrialRecord> a;
  std::vector<TrialRecord> b;
  const auto ra = run_experiment(small_config(21), [&](const Population&, const TrialRecord& r) { a.push_back(r); });
  const auto rb = run_experiment(small_config(21), [&](const Population&, const TrialRecord& r) { b.push_back(r); });
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].input == b[i].input);
    CHECK(a[i].action == b[i].action);
    CHECK(a[i].payoff == b[i].payoff);
    CHECK(a[i].prediction == b[i].prediction);
  }
  CHECK(csv_text(ra.rows) == csv_text(rb.rows));

  const auto rc = run_experiment(small_config(22));
  CHECK(csv_text(ra.rows) != csv_text(rc.rows));
}

TEST_CASE("summary echoes the configuration") {
  auto config = small_config(7, 40, 5);
  apply_override(config, "beta=0.123456789012345");
  apply_override(config, "theta_ga=31");
  apply_override(config, "mu_min=0.000321");
  apply_override(config, "pop_size=1500");
  const auto result = run_experiment(config);
  const auto& echoed = result.summary.at("config");
  CHECK(echoed == to_json(config));
  CHECK(echoed.at("beta").get<double>() == 0.123456789012345);
  CHECK(echoed.at("pop_size").get<int>() == 1500);
  CHECK(to_json(config_from_json(echoed)) == echoed);
  // Round-trip through text as well.
  CHECK(to_json(config_from_json(nlohmann::json::parse(echoed.dump()))) == echoed);
  CHECK(result.summary.at("trials_run").get<std::uint64_t>() == 40);
  CHECK(result.summary.at("rows").get<std::size_t>() == 4);
  CHECK(result.summary.contains("wall_clock_seconds"));
  CHECK(result.summary.at("final").at("trial").get<std::uint64_t>() == 40);
}

TEST_CASE("outputs") {
  SUBCASE("unwritable path fails before any trial") {
    auto config = small_config();
    config.out_path = "/nonexistent-dir/metrics.csv";
    int calls = 0;
    CHECK_THROWS_AS(run_experiment(config, [&](const Population&, const TrialRecord&) { ++calls; }),
                    std::runtime_error);
    CHECK(calls == 0);

    config.out_path.clear();
    config.summary_path = "/nonexistent-dir/summary.json";
    CHECK_THROWS_AS(run_experiment(config, [&](const Population&, const TrialRecord&) { ++calls; }),
                    std::runtime_error);
    CHECK(calls == 0);
  }
  SUBCASE("files are written") {
    auto config = small_config(2, 100, 10);
    config.out_path = temp_path("metrics.csv").string();
    config.summary_path = temp_path("summary.json").string();
    const auto result = run_experiment(config);
    std::ifstream csv(config.out_path, std::ios::binary);
    std::stringstream content;
    content << csv.rdbuf();
    CHECK(content.str() == csv_text(result.rows));
    std::ifstream summary(config.summary_path);
    CHECK(nlohmann::json::parse(summary).at("rows").get<std::size_t>() == 5);
    std::filesystem::remove(config.out_path);
    std::filesystem::remove(config.summary_path);
  }
}

TEST_CASE("emit_csv") {
  const std::string header = "trial,performance,error,macro_frac,avg_mu,avg_nodes,avg_conn,avg_T\n";
  CHECK(csv_text({}) == header);

  const MetricsRow row{100, 0.9876543, 0.0123456789, 0.4125, 0.25, 3.5, 2.125, 41.75};
  const std::string text = csv_text({row});
  CHECK(text == header + "100,0.987654,0.012346,0.412500,0.250000,3.500000,2.125000,41.750000\n");

  const auto lines = split(text, '\n');
  REQUIRE(lines.size() == 2);
  for (const auto& line : lines) CHECK(split(line, ',').size() == 8);
  const auto fields = split(lines[1], ',');
  CHECK(std::stoull(fields[0]) == row.trial);
  const std::vector<double> values{row.performance, row.error, row.macro_frac, row.avg_mu,
                                   row.avg_nodes, row.avg_conn, row.avg_t};
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(std::abs(std::stod(fields[i + 1]) - values[i]) <= 5e-7);
  }
  CHECK(text.find('\r') == std::string::npos);
  CHECK_THROWS_AS(emit_csv({row}, std::filesystem::path("/nonexistent-dir/x.csv")),
                  std::runtime_error);
}

TEST_CASE("configuration overrides") {
  ExperimentConfig config;
  apply_override(config, "eta", "0.5");
  CHECK(config.engine.xcsf.eta == 0.5);
  apply_override(config, "t_max=30");
  CHECK(config.engine.fln.t_max == 30);
  apply_override(config, "seed=18446744073709551615");
  CHECK(config.seed == 18446744073709551615ULL);

  CHECK_THROWS_AS(apply_override(config, "gamma=1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(config, "eta=fast"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(config, "eta=0.5x"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(config, "theta_ga=2.5"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(config, "eta"), std::invalid_argument);

  CHECK_NOTHROW(validate(ExperimentConfig{}));
  auto bad = ExperimentConfig{};
  bad.trials = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = ExperimentConfig{};
  bad.window = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = ExperimentConfig{};
  bad.engine.fln.t_min = 60;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
}
