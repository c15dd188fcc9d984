#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "pbrl/artifacts.hpp"
#include "pbrl/cartpole.hpp"
#include "pbrl/config.hpp"
#include "pbrl/harness.hpp"
#include "pbrl/pbrl_agent.hpp"
#include "pbrl/q_agent.hpp"
#include "pbrl/series.hpp"
#include "pbrl/tuner.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parallel-bandit and Q-learning cart-pole simulator core";
  m.attr("__version__") = "0.1.0";
  m.attr("NUM_STATES") = pbrl::kNumStates;
  m.attr("MIN_SAMPLE") = pbrl::kMinSample;
  m.attr("MAX_SAMPLE") = pbrl::kMaxSample;

  // --- sequences -------------------------------------------------------
  py::class_<pbrl::SampleSeries>(m, "SampleSeries")
      .def(py::init<>())
      .def_readwrite("samples", &pbrl::SampleSeries::samples)
      .def_readwrite("base_period_ps", &pbrl::SampleSeries::base_period_ps)
      .def_readwrite("label", &pbrl::SampleSeries::label)
      .def("__len__", &pbrl::SampleSeries::size);

  py::class_<pbrl::StridedCursor>(m, "StridedCursor")
      .def(py::init<const pbrl::SampleSeries&, std::size_t, std::size_t>(), "series"_a,
           "stride"_a, "start"_a = 0, py::keep_alive<1, 2>())
      .def("next", &pbrl::StridedCursor::next)
      .def_property_readonly("position", &pbrl::StridedCursor::position);

  py::class_<pbrl::AutocorrelationProfile>(m, "AutocorrelationProfile")
      .def_readonly("lags", &pbrl::AutocorrelationProfile::lags)
      .def_readonly("rho", &pbrl::AutocorrelationProfile::rho);

  m.def("gen_synthetic_chaos", &pbrl::gen_synthetic_chaos, "length"_a, "lag"_a, "seed"_a);
  m.def("gen_uniform", &pbrl::gen_uniform, "length"_a, "seed"_a);
  m.def("gen_normal", &pbrl::gen_normal, "length"_a, "sigma"_a, "seed"_a);
  m.def("shuffle_surrogate", &pbrl::shuffle_surrogate, "series"_a, "seed"_a);
  m.def("load_series", &pbrl::load_series, "path"_a, "base_period_ps"_a = 10.0);
  m.def("save_series", &pbrl::save_series, "series"_a, "path"_a);
  m.def("autocorrelation", &pbrl::autocorrelation, "series"_a, "max_lag"_a);

  // --- cart-pole -------------------------------------------------------
  py::class_<pbrl::ContinuousState>(m, "ContinuousState")
      .def(py::init<>())
      .def(py::init([](double x, double x_dot, double theta, double theta_dot) {
             return pbrl::ContinuousState{x, x_dot, theta, theta_dot};
           }),
           "x"_a, "x_dot"_a, "theta"_a, "theta_dot"_a)
      .def_readwrite("x", &pbrl::ContinuousState::x)
      .def_readwrite("x_dot", &pbrl::ContinuousState::x_dot)
      .def_readwrite("theta", &pbrl::ContinuousState::theta)
      .def_readwrite("theta_dot", &pbrl::ContinuousState::theta_dot)
      .def("__repr__", [](const pbrl::ContinuousState& s) {
        return "ContinuousState(x=" + std::to_string(s.x) + ", x_dot=" + std::to_string(s.x_dot) +
               ", theta=" + std::to_string(s.theta) +
               ", theta_dot=" + std::to_string(s.theta_dot) + ")";
      });

  py::class_<pbrl::EnvConfig>(m, "EnvConfig")
      .def(py::init<>())
      .def_readwrite("gravity", &pbrl::EnvConfig::gravity)
      .def_readwrite("mass_cart", &pbrl::EnvConfig::mass_cart)
      .def_readwrite("mass_pole", &pbrl::EnvConfig::mass_pole)
      .def_readwrite("pole_half_length", &pbrl::EnvConfig::pole_half_length)
      .def_readwrite("force_mag", &pbrl::EnvConfig::force_mag)
      .def_readwrite("tau", &pbrl::EnvConfig::tau)
      .def_readwrite("x_limit", &pbrl::EnvConfig::x_limit)
      .def_readwrite("theta_limit", &pbrl::EnvConfig::theta_limit)
      .def_readwrite("x_range", &pbrl::EnvConfig::x_range)
      .def_readwrite("x_dot_range", &pbrl::EnvConfig::x_dot_range)
      .def_readwrite("theta_range", &pbrl::EnvConfig::theta_range)
      .def_readwrite("theta_dot_range", &pbrl::EnvConfig::theta_dot_range);

  m.def(
      "initial_state",
      [](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return pbrl::reset_state(rng);
      },
      "seed"_a);
  m.def("step", &pbrl::step, "state"_a, "action"_a, "config"_a = pbrl::EnvConfig{});
  m.def("discretize", &pbrl::discretize, "state"_a, "config"_a = pbrl::EnvConfig{});

  // --- agents ----------------------------------------------------------
  py::class_<pbrl::PbrlParams>(m, "PbrlParams")
      .def(py::init<>())
      .def(py::init([](double delta_th, double a0, double gamma) {
             return pbrl::PbrlParams{delta_th, a0, gamma};
           }),
           "delta_th"_a, "a0"_a, "gamma"_a)
      .def_readwrite("delta_th", &pbrl::PbrlParams::delta_th)
      .def_readwrite("a0", &pbrl::PbrlParams::a0)
      .def_readwrite("gamma", &pbrl::PbrlParams::gamma);

  py::class_<pbrl::QParams>(m, "QParams")
      .def(py::init<>())
      .def_readwrite("r_penalty", &pbrl::QParams::r_penalty)
      .def_readwrite("gamma", &pbrl::QParams::gamma)
      .def_readwrite("alpha", &pbrl::QParams::alpha)
      .def_readwrite("epsilon0", &pbrl::QParams::epsilon0)
      .def_readwrite("penalty_cutoff_step", &pbrl::QParams::penalty_cutoff_step);

  m.def("decide", &pbrl::decide, "threshold"_a, "sample"_a);
  m.def("epsilon_schedule", &pbrl::epsilon_schedule, "epsilon0"_a, "episode"_a);

  // --- experiments -----------------------------------------------------
  py::class_<pbrl::RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_property(
          "agent",
          [](const pbrl::RunConfig& c) {
            return c.agent == pbrl::AgentKind::kPbrl ? "pbrl" : "qlearning";
          },
          [](pbrl::RunConfig& c, const std::string& v) {
            if (v == "pbrl") {
              c.agent = pbrl::AgentKind::kPbrl;
            } else if (v == "qlearning") {
              c.agent = pbrl::AgentKind::kQLearning;
            } else {
              throw py::value_error("agent must be 'pbrl' or 'qlearning'");
            }
          })
      .def_property(
          "source", [](const pbrl::RunConfig& c) { return c.source.to_string(); },
          [](pbrl::RunConfig& c, const std::string& v) { c.source = pbrl::SourceSpec::parse(v); })
      .def_readwrite("stride", &pbrl::RunConfig::stride)
      .def_readwrite("rounds", &pbrl::RunConfig::rounds)
      .def_readwrite("episodes", &pbrl::RunConfig::episodes)
      .def_readwrite("max_steps", &pbrl::RunConfig::max_steps)
      .def_readwrite("base_seed", &pbrl::RunConfig::base_seed)
      .def_readwrite("jobs", &pbrl::RunConfig::jobs)
      .def_readwrite("out_dir", &pbrl::RunConfig::out_dir)
      .def_readwrite("series_length", &pbrl::RunConfig::series_length)
      .def_readwrite("chaos_lag", &pbrl::RunConfig::chaos_lag)
      .def_readwrite("normal_sigma", &pbrl::RunConfig::normal_sigma)
      .def_readwrite("base_period_ps", &pbrl::RunConfig::base_period_ps)
      .def_readwrite("pbrl", &pbrl::RunConfig::pbrl)
      .def_readwrite("q", &pbrl::RunConfig::q)
      .def_readwrite("env", &pbrl::RunConfig::env)
      .def_readwrite("fom_threshold", &pbrl::RunConfig::fom_threshold);

  m.def("resolve_config", &pbrl::resolve_config, "overrides"_a);
  m.def("serialize_config", &pbrl::serialize_config, "config"_a);
  m.def("default_pbrl_params", [](const std::string& source) {
    return pbrl::default_pbrl_params(pbrl::SourceSpec::parse(source));
  });

  py::class_<pbrl::RoundResult>(m, "RoundResult")
      .def_readonly("success_steps", &pbrl::RoundResult::success_steps)
      .def_readonly("window_states", &pbrl::RoundResult::window_states);

  py::class_<pbrl::ExperimentCurves>(m, "ExperimentCurves")
      .def_readonly("mean_success", &pbrl::ExperimentCurves::mean_success)
      .def_readonly("mean_variety", &pbrl::ExperimentCurves::mean_variety)
      .def_readonly("fom", &pbrl::ExperimentCurves::fom);

  m.def(
      "run_round",
      [](const pbrl::RunConfig& cfg, int round_index) {
        py::gil_scoped_release release;
        return pbrl::Experiment(cfg).run_round(round_index);
      },
      "config"_a, "round_index"_a);
  m.def(
      "run_experiment",
      [](const pbrl::RunConfig& cfg) {
        py::gil_scoped_release release;
        return pbrl::run_experiment(cfg).curves;
      },
      "config"_a);
  m.def("variety_of_states", &pbrl::variety_of_states, "rounds"_a);
  m.def("compute_fom", &pbrl::compute_fom, "mean_success"_a, "threshold"_a = 145.0,
        "cap"_a = 1000);
  m.def(
      "write_simulation_artifacts",
      [](const pbrl::RunConfig& cfg, const pbrl::ExperimentCurves& curves,
         const std::string& dir) {
        const auto paths = pbrl::write_simulation_artifacts(cfg, curves, dir);
        return py::make_tuple(paths.success_curve, paths.variety, paths.fom, paths.manifest);
      },
      "config"_a, "curves"_a, "dir"_a);

  // --- tuners ----------------------------------------------------------
  m.def(
      "nelder_mead",
      [](const py::function& f, std::vector<std::vector<double>> vertices, int iterations,
         const py::object& in_box) {
        pbrl::Objective objective;
        objective.evaluate = [f](const std::vector<double>& x) { return f(x).cast<double>(); };
        if (!in_box.is_none()) {
          py::function g = in_box.cast<py::function>();
          objective.in_box = [g](const std::vector<double>& x) { return g(x).cast<bool>(); };
        }
        const auto r = pbrl::nelder_mead(objective, std::move(vertices), iterations);
        return py::make_tuple(r.best_value, r.best_point);
      },
      "f"_a, "vertices"_a, "iterations"_a = 20, "in_box"_a = py::none());
  m.def(
      "golden_section",
      [](const py::function& f, int iterations) {
        const auto r =
            pbrl::golden_section([f](double c) { return f(c).cast<double>(); }, iterations);
        return py::make_tuple(r.best_point.at(0), r.best_value);
      },
      "f"_a, "iterations"_a = 25);
  m.def("pbrl_initial_simplex", &pbrl::pbrl_initial_simplex);
  m.def("q_initial_simplex", &pbrl::q_initial_simplex);
  m.def("golden_initial_points", &pbrl::golden_initial_points);
  m.def("pbrl_params_in_box", &pbrl::pbrl_params_in_box, "v"_a);
  m.def("q_params_in_box", &pbrl::q_params_in_box, "v"_a);
  m.def("scale_params", &pbrl::scale_params, "c"_a,
        "base"_a = pbrl::PbrlParams{3.208, 547.0, 0.6774});
}
