#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

#include "fdgp/experiment.hpp"

namespace fdgp {

namespace {

// Every tunable, by the name used on the command line and in summaries.
template <class Config, class Visitor>
void visit_fields(Config& c, Visitor&& visit) {
  visit("seed", c.seed);
  visit("trials", c.trials);
  visit("window", c.window);
  visit("pop_size", c.pop_size);
  auto& x = c.engine.xcsf;
  visit("beta", x.beta);
  visit("eta", x.eta);
  visit("x0", x.x0);
  visit("eps0", x.eps0);
  visit("alpha", x.alpha);
  visit("nu", x.nu);
  visit("theta_ga", x.theta_ga);
  visit("theta_del", x.theta_del);
  visit("delta", x.delta);
  visit("f_init", x.f_init);
  visit("eps_init", x.eps_init);
  visit("action_window", x.action_window);
  visit("p_floor", x.p_floor);
  visit("covering_retry_cap", x.covering_retry_cap);
  auto& f = c.engine.fln;
  visit("t_min", f.t_min);
  visit("t_max", f.t_max);
  visit("mu_min", f.mu_min);
  visit("max_nodes", f.max_nodes);
  visit("s_init", f.s_init);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("bad value for '" + std::string(key) + "': '" +
                                std::string(text) + "'");
  }
  return value;
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void apply_override(ExperimentConfig& config, std::string_view key, std::string_view value) {
  bool found = false;
  visit_fields(config, [&](std::string_view name, auto& field) {
    if (name != key) return;
    field = parse_number<std::remove_reference_t<decltype(field)>>(key, value);
    found = true;
  });
  if (!found) throw std::invalid_argument("unknown parameter '" + std::string(key) + "'");
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("expected key=value, got '" + std::string(assignment) + "'");
  }
  apply_override(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void validate(const ExperimentConfig& c) {
  const auto& x = c.engine.xcsf;
  const auto& f = c.engine.fln;
  require(c.trials >= 1, "trials must be at least 1");
  require(c.window >= 1, "window must be at least 1");
  require(c.pop_size >= 1, "pop_size must be at least 1");
  require(c.engine.n_outputs >= 1, "n_outputs must be at least 1");
  require(x.beta > 0 && x.beta <= 1, "beta must lie in (0, 1]");
  require(x.eta > 0 && x.eta <= 1, "eta must lie in (0, 1]");
  require(x.x0 > 0, "x0 must be positive");
  require(x.eps0 > 0, "eps0 must be positive");
  require(x.alpha > 0 && x.alpha <= 1, "alpha must lie in (0, 1]");
  require(x.nu > 0, "nu must be positive");
  require(x.theta_ga >= 0, "theta_ga must be nonnegative");
  require(x.theta_del >= 0, "theta_del must be nonnegative");
  require(x.delta > 0, "delta must be positive");
  require(x.f_init > 0 && x.f_init <= 1, "f_init must lie in (0, 1]");
  require(x.eps_init >= 0, "eps_init must be nonnegative");
  require(x.action_window >= 0, "action_window must be nonnegative");
  require(x.p_floor > 0, "p_floor must be positive");
  require(x.covering_retry_cap >= 1, "covering_retry_cap must be at least 1");
  require(f.t_min >= 1 && f.t_min <= f.t_max, "need 1 <= t_min <= t_max");
  require(f.mu_min > 0 && f.mu_min <= 1, "mu_min must lie in (0, 1]");
  require(f.max_nodes >= 2 + c.engine.n_outputs, "max_nodes too small for a minimal genome");
  require(f.s_init >= 0 && f.s_init <= 1, "s_init must lie in [0, 1]");
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  visit_fields(config, [&](std::string_view name, const auto& field) { j[std::string(name)] = field; });
  j["out_path"] = config.out_path;
  j["summary_path"] = config.summary_path;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  visit_fields(config, [&](std::string_view name, auto& field) {
    const std::string key(name);
    if (j.contains(key)) j.at(key).get_to(field);
  });
  if (j.contains("out_path")) config.out_path = j.at("out_path").get<std::string>();
  if (j.contains("summary_path")) config.summary_path = j.at("summary_path").get<std::string>();
  return config;
}

}  // namespace fdgp
