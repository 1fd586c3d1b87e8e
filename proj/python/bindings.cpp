#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdgp/experiment.hpp"
#include "fdgp/frog.hpp"

namespace py = pybind11;
using namespace fdgp;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fuzzy logic network classifiers in XCSF";

  py::enum_<FuzzyFunction>(m, "FuzzyFunction")
      .value("OR_MAX", FuzzyFunction::kOrMax)
      .value("AND_PRODUCT", FuzzyFunction::kAndProduct)
      .value("AND_MIN", FuzzyFunction::kAndMin)
      .value("OR_BOUNDED", FuzzyFunction::kOrBounded)
      .value("NOT", FuzzyFunction::kNot)
      .value("IDENTITY", FuzzyFunction::kIdentity);

  m.def(
      "apply_function",
      [](int id, const std::vector<double>& args) {
        if (args.empty()) throw py::value_error("args must be nonempty");
        return apply_function(function_from_id(id), args);
      },
      py::arg("function_id"), py::arg("args"));

  py::class_<SplitMix64>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed") = 0)
      .def("uniform", &SplitMix64::uniform)
      .def("next", [](SplitMix64& r) { return r(); });

  py::class_<FlnConfig>(m, "FlnConfig")
      .def(py::init<>())
      .def_readwrite("t_min", &FlnConfig::t_min)
      .def_readwrite("t_max", &FlnConfig::t_max)
      .def_readwrite("mu_min", &FlnConfig::mu_min)
      .def_readwrite("max_nodes", &FlnConfig::max_nodes)
      .def_readwrite("s_init", &FlnConfig::s_init);

  py::class_<FlnNode>(m, "FlnNode")
      .def(py::init<>())
      .def(py::init([](int function, std::array<int, kMaxConnections> connections) {
             return FlnNode{function_from_id(function), connections};
           }),
           py::arg("function"), py::arg("connections"))
      .def_readwrite("function", &FlnNode::function)
      .def_readwrite("connections", &FlnNode::connections)
      .def("__eq__", [](const FlnNode& a, const FlnNode& b) { return a == b; });

  py::class_<FlnGenome>(m, "FlnGenome")
      .def(py::init<>())
      .def_readwrite("n_inputs", &FlnGenome::n_inputs)
      .def_readwrite("n_outputs", &FlnGenome::n_outputs)
      .def_readwrite("nodes", &FlnGenome::nodes)
      .def_readwrite("updates", &FlnGenome::updates)
      .def_readwrite("mu", &FlnGenome::mu)
      .def_property_readonly("total_nodes", &FlnGenome::total_nodes)
      .def_property_readonly("connectivity", &FlnGenome::connectivity);

  m.def("genomes_equal", &genomes_equal);
  m.def("check_invariants", &check_invariants, py::arg("genome"),
        py::arg("config") = FlnConfig{});
  m.def("random_genome", &random_genome, py::arg("n_inputs"), py::arg("n_outputs"),
        py::arg("rng"), py::arg("config") = FlnConfig{});
  m.def("mutate_genome", &mutate_genome, py::arg("parent"), py::arg("rng"),
        py::arg("config") = FlnConfig{});
  m.def(
      "run_network",
      [](const FlnGenome& g, const std::vector<double>& input, SplitMix64& rng,
         const FlnConfig& config) {
        if (static_cast<int>(input.size()) != g.n_inputs) {
          throw py::value_error("input length must equal n_inputs");
        }
        auto out = run_network(g, input, rng, config);
        return py::make_tuple(out.match_degree, out.actions);
      },
      py::arg("genome"), py::arg("input"), py::arg("rng"), py::arg("config") = FlnConfig{});

  m.def("sense", [](double d) { return frog::sense({d}); }, py::arg("distance"));
  m.def("payoff", &frog::payoff, py::arg("x"), py::arg("a"));
  m.def("optimal_action", &frog::optimal_action, py::arg("x"));

  py::class_<XcsfParams>(m, "XcsfParams")
      .def(py::init<>())
      .def_readwrite("beta", &XcsfParams::beta)
      .def_readwrite("eta", &XcsfParams::eta)
      .def_readwrite("x0", &XcsfParams::x0)
      .def_readwrite("eps0", &XcsfParams::eps0)
      .def_readwrite("alpha", &XcsfParams::alpha)
      .def_readwrite("nu", &XcsfParams::nu)
      .def_readwrite("theta_ga", &XcsfParams::theta_ga)
      .def_readwrite("theta_del", &XcsfParams::theta_del)
      .def_readwrite("delta", &XcsfParams::delta)
      .def_readwrite("f_init", &XcsfParams::f_init)
      .def_readwrite("eps_init", &XcsfParams::eps_init)
      .def_readwrite("action_window", &XcsfParams::action_window)
      .def_readwrite("p_floor", &XcsfParams::p_floor);

  py::class_<Classifier>(m, "Classifier")
      .def(py::init<>())
      .def_readwrite("genome", &Classifier::genome)
      .def_readwrite("weights", &Classifier::weights)
      .def_readwrite("error", &Classifier::error)
      .def_readwrite("fitness", &Classifier::fitness)
      .def_readwrite("numerosity", &Classifier::numerosity)
      .def_readwrite("experience", &Classifier::experience);

  m.def(
      "compute_prediction",
      [](const Classifier& cl, const std::vector<double>& state, double action, double x0) {
        if (cl.weights.size() != state.size() + 2) {
          throw py::value_error("weights length must be len(state) + 2");
        }
        return compute_prediction(cl, state, action, x0);
      },
      py::arg("classifier"), py::arg("state"), py::arg("action"), py::arg("x0") = 1.0);
  m.def("accuracy", &accuracy, py::arg("error"), py::arg("params") = XcsfParams{});

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("window", &ExperimentConfig::window)
      .def_readwrite("pop_size", &ExperimentConfig::pop_size)
      .def_readwrite("out_path", &ExperimentConfig::out_path)
      .def_readwrite("summary_path", &ExperimentConfig::summary_path)
      .def_property(
          "xcsf", [](const ExperimentConfig& c) { return c.engine.xcsf; },
          [](ExperimentConfig& c, const XcsfParams& p) { c.engine.xcsf = p; })
      .def_property(
          "fln", [](const ExperimentConfig& c) { return c.engine.fln; },
          [](ExperimentConfig& c, const FlnConfig& f) { c.engine.fln = f; })
      .def(
          "set", [](ExperimentConfig& c, const std::string& key,
                    const std::string& value) { apply_override(c, key, value); },
          py::arg("key"), py::arg("value"))
      .def("to_json", [](const ExperimentConfig& c) { return to_json(c).dump(); });

  py::class_<MetricsRow>(m, "MetricsRow")
      .def_readonly("trial", &MetricsRow::trial)
      .def_readonly("performance", &MetricsRow::performance)
      .def_readonly("error", &MetricsRow::error)
      .def_readonly("macro_frac", &MetricsRow::macro_frac)
      .def_readonly("avg_mu", &MetricsRow::avg_mu)
      .def_readonly("avg_nodes", &MetricsRow::avg_nodes)
      .def_readonly("avg_conn", &MetricsRow::avg_conn)
      .def_readonly("avg_T", &MetricsRow::avg_t);

  py::register_exception<CoveringError>(m, "CoveringError", PyExc_RuntimeError);

  m.def("run_experiment", [](const ExperimentConfig& config) {
    ExperimentResult result;
    {
      py::gil_scoped_release release;
      result = run_experiment(config);
    }
    return py::make_tuple(result.rows, result.summary.dump());
  });
}
