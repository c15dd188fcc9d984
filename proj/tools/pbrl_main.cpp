#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbrl/artifacts.hpp"
#include "pbrl/config.hpp"
#include "pbrl/harness.hpp"
#include "pbrl/tuner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  pbrl::KeyValueMap flag_values;
};

void add_common_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "key = value config file (see README)");
  cmd->add_option("--set", opts.sets, "extra key=value override, repeatable")
      ->type_name("KEY=VALUE");
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"--agent", "agent"},           {"--source", "source"},
      {"--rounds", "rounds"},         {"--episodes", "episodes"},
      {"--stride", "stride"},         {"--seed", "base_seed"},
      {"--jobs", "jobs"},             {"--max-steps", "max_steps"},
      {"--series-length", "series_length"}, {"--lag", "chaos_lag"},
      {"--sigma", "normal_sigma"},    {"--delta-th", "delta_th"},
      {"--a0", "a0"},                 {"--pbrl-gamma", "pbrl_gamma"},
      {"--r-penalty", "r_penalty"},   {"--q-gamma", "q_gamma"},
      {"--alpha", "alpha"},           {"--epsilon0", "epsilon0"},
      {"--out", "out_dir"},
  };
  for (const auto& [flag, key] : flags) {
    const std::string key_copy = key;
    cmd->add_option_function<std::string>(
        flag, [&opts, key_copy](const std::string& v) { opts.flag_values[key_copy] = v; },
        "overrides config key '" + key + "'");
  }
}

pbrl::RunConfig resolve_common(const CommonOpts& opts) {
  pbrl::KeyValueMap merged;
  if (!opts.config_path.empty()) merged = pbrl::load_config_file(opts.config_path);
  for (const auto& entry : opts.sets) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--set expects KEY=VALUE, got '" + entry + "'");
    }
    merged[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  for (const auto& [key, value] : opts.flag_values) merged[key] = value;
  if (merged.find("out_dir") == merged.end()) {
    if (const char* env = std::getenv("PBRL_OUT_DIR")) merged["out_dir"] = env;
  }
  return pbrl::resolve_config(merged);
}

void check_source_paths(const pbrl::SourceSpec& source) {
  if (source.kind == pbrl::SourceKind::kChaosFile &&
      !std::filesystem::exists(source.path)) {
    throw std::invalid_argument("chaos file not found: '" + source.path + "'");
  }
  if (source.inner) check_source_paths(*source.inner);
}

int cmd_simulate(const CommonOpts& opts) {
  const pbrl::RunConfig cfg = resolve_common(opts);
  if (cfg.agent == pbrl::AgentKind::kPbrl) check_source_paths(cfg.source);
  const pbrl::ExperimentResult result = pbrl::run_experiment(cfg);
  const auto paths = pbrl::write_simulation_artifacts(cfg, result.curves, cfg.out_dir);
  std::cout << "fom=" << result.curves.fom << " rounds=" << cfg.rounds
            << " episodes=" << cfg.episodes << '\n'
            << "wrote " << paths.success_curve << ", " << paths.variety << ", " << paths.fom
            << ", " << paths.manifest << '\n';
  return kExitOk;
}

int cmd_tune(const CommonOpts& opts, const std::string& target, int iterations_flag,
             int tune_rounds_flag) {
  pbrl::RunConfig cfg = resolve_common(opts);
  if (cfg.agent == pbrl::AgentKind::kPbrl) check_source_paths(cfg.source);

  pbrl::TuneOptions options;
  std::vector<std::string> param_names;
  if (target == "pbrl-nm") {
    options = {20, 480};
    param_names = {"delta_th", "a0", "pbrl_gamma"};
  } else if (target == "pbrl-gs") {
    options = {25, 270};
    param_names = {"c"};
  } else if (target == "q-nm") {
    options = {20, 480};
    param_names = {"r_penalty", "q_gamma", "alpha", "epsilon0"};
  } else {
    throw std::invalid_argument("unknown tune target '" + target +
                                "' (expected pbrl-nm, pbrl-gs or q-nm)");
  }
  if (iterations_flag >= 0) options.iterations = iterations_flag;
  if (tune_rounds_flag >= 1) options.rounds_per_eval = tune_rounds_flag;

  std::filesystem::create_directories(cfg.out_dir);
  const std::string log_path = cfg.out_dir + "/tune_log.csv";
  std::ofstream log_out(log_path, std::ios::binary);
  if (!log_out) throw std::runtime_error("cannot write '" + log_path + "'");
  log_out << "iteration";
  for (const auto& name : param_names) log_out << ',' << name;
  log_out << ",fom\n";
  auto logger = [&log_out](int iteration, const std::vector<double>& point, double value) {
    log_out << iteration;
    char buf[64];
    for (double p : point) {
      std::snprintf(buf, sizeof(buf), "%.12g", p);
      log_out << ',' << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.0f", value);
    log_out << ',' << buf << '\n';
  };

  pbrl::TuneResult result;
  if (target == "pbrl-nm") {
    result = pbrl::tune_pbrl_nelder_mead(cfg, options, logger);
  } else if (target == "pbrl-gs") {
    result = pbrl::tune_pbrl_golden(cfg, options, logger);
  } else {
    result = pbrl::tune_q_nelder_mead(cfg, options, logger);
  }

  const std::string params_path = cfg.out_dir + "/tuned_params.cfg";
  std::ofstream params_out(params_path, std::ios::binary);
  if (!params_out) throw std::runtime_error("cannot write '" + params_path + "'");
  char buf[64];
  auto emit = [&](const std::string& key, double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    params_out << key << " = " << buf << '\n';
  };
  if (target == "pbrl-gs") {
    const pbrl::PbrlParams tuned = pbrl::scale_params(result.best_point.at(0));
    params_out << "# best c = " << result.best_point.at(0) << '\n';
    emit("delta_th", tuned.delta_th);
    emit("a0", tuned.a0);
    emit("pbrl_gamma", tuned.gamma);
  } else if (target == "pbrl-nm") {
    emit("delta_th", result.best_point.at(0));
    emit("a0", result.best_point.at(1));
    emit("pbrl_gamma", result.best_point.at(2));
  } else {
    emit("r_penalty", result.best_point.at(0));
    emit("q_gamma", result.best_point.at(1));
    emit("alpha", result.best_point.at(2));
    emit("epsilon0", result.best_point.at(3));
  }

  std::cout << "best_fom=" << result.best_value << " wrote " << log_path << ", " << params_path
            << '\n';
  return kExitOk;
}

int cmd_autocorr(const CommonOpts& opts, int max_lag, const std::string& out_file) {
  const pbrl::RunConfig cfg = resolve_common(opts);
  check_source_paths(cfg.source);
  const pbrl::SampleSeries series = pbrl::build_series(cfg.source, cfg);
  const auto profile = pbrl::autocorrelation(series, max_lag);
  std::string path = out_file;
  if (path.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    path = cfg.out_dir + "/autocorr.csv";
  }
  pbrl::write_autocorr_csv(profile, path);
  std::cout << "wrote " << path << '\n';
  return kExitOk;
}

int cmd_surrogate(const std::string& in_path, const std::string& out_path,
                  std::uint64_t seed) {
  if (!std::filesystem::exists(in_path)) {
    throw std::invalid_argument("input series not found: '" + in_path + "'");
  }
  const pbrl::SampleSeries series = pbrl::load_series(in_path);
  pbrl::save_series(pbrl::shuffle_surrogate(series, seed), out_path);
  std::cout << "wrote " << out_path << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel-bandit and Q-learning cart-pole simulator"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  CLI::App* sim = app.add_subcommand("simulate", "run an experiment and write CSV artifacts");
  add_common_options(sim, sim_opts);

  CommonOpts tune_opts;
  std::string tune_target;
  int tune_iterations = -1;
  int tune_rounds = -1;
  CLI::App* tune = app.add_subcommand("tune", "hyperparameter search with the FOM objective");
  add_common_options(tune, tune_opts);
  tune->add_option("--target", tune_target, "pbrl-nm | pbrl-gs | q-nm")->required();
  tune->add_option("--iterations", tune_iterations, "search iterations (default 20 NM, 25 GS)");
  tune->add_option("--tune-rounds", tune_rounds,
                   "rounds per objective evaluation (default 480 NM, 270 GS)");

  CommonOpts ac_opts;
  int max_lag = 10;
  std::string ac_out;
  CLI::App* autocorr = app.add_subcommand("autocorr", "autocorrelation profile of a source");
  add_common_options(autocorr, ac_opts);
  autocorr->add_option("--max-lag", max_lag, "largest lag to estimate (default 10)");
  autocorr->add_option("--out-file", ac_out, "output CSV path (default <out>/autocorr.csv)");

  std::string sur_in, sur_out;
  std::uint64_t sur_seed = 1;
  CLI::App* surrogate =
      app.add_subcommand("surrogate", "write a randomly shuffled copy of a series file");
  surrogate->add_option("--in", sur_in, "input series (.bin or .txt)")->required();
  surrogate->add_option("--out", sur_out, "output series (.bin or .txt)")->required();
  surrogate->add_option("--seed", sur_seed, "shuffle seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_opts);
    if (tune->parsed()) return cmd_tune(tune_opts, tune_target, tune_iterations, tune_rounds);
    if (autocorr->parsed()) return cmd_autocorr(ac_opts, max_lag, ac_out);
    if (surrogate->parsed()) return cmd_surrogate(sur_in, sur_out, sur_seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}
