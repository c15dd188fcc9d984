#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "pbrl/agent.hpp"
#include "pbrl/config.hpp"
#include "pbrl/series.hpp"

namespace pbrl {

inline constexpr int kWindowEpisodes = 10;

/// Deterministic stream derivation: one base seed fans out into independent
/// per-purpose engines.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_tag);

struct EpisodeOutcome {
  int steps_survived = 0;  // non-failing actions taken
  std::set<int> visited;   // discrete states entered, including the initial one
};

/// Drives decide -> step -> learn until failure or the success cap.
EpisodeOutcome run_episode(Agent& agent, const EnvConfig& env, std::mt19937_64& reset_rng,
                           int max_steps = 150);

struct RoundResult {
  std::vector<int> success_steps;  // continuous successful steps, one per episode
  std::vector<std::vector<std::uint16_t>> window_states;  // distinct states per 10-episode window
};

struct ExperimentCurves {
  std::vector<double> mean_success;  // per episode, averaged over rounds
  std::vector<double> mean_variety;  // per window, averaged over rounds
  int fom = 0;
};

struct ExperimentResult {
  ExperimentCurves curves;
  std::vector<RoundResult> rounds;
};

/// One experiment = `rounds` independent learning rounds under a fixed
/// config. Series-backed sources materialize one shared series up front;
/// each round then walks it from its own cursor offset. Rounds depend only
/// on (config, round index), so they can run in any order or in parallel
/// without changing the result.
class Experiment {
 public:
  explicit Experiment(const RunConfig& config);

  /// Round seed = base_seed + round_index.
  RoundResult run_round(int round_index) const;

  ExperimentResult run() const;

  const RunConfig& config() const { return config_; }
  const SampleSeries* series() const { return series_.get(); }

 private:
  std::unique_ptr<Agent> make_agent(int round_index, std::uint64_t round_seed) const;

  RunConfig config_;
  std::shared_ptr<SampleSeries> series_;  // null for PRNG sources and Q-learning
};

/// Per-window mean count of distinct experienced states across rounds.
std::vector<double> variety_of_states(const std::vector<RoundResult>& rounds);

/// Largest 1-based episode index whose averaged success count is below
/// `threshold`; 0 when the whole curve clears it; `cap` when the final
/// episode is still below it.
int compute_fom(const std::vector<double>& mean_success, double threshold = 145.0,
                int cap = 1000);

inline ExperimentResult run_experiment(const RunConfig& config) {
  return Experiment(config).run();
}

/// Materializes the series a source spec describes (for series-backed kinds
/// and for autocorrelation analysis of any kind).
SampleSeries build_series(const SourceSpec& source, const RunConfig& config);

}  // namespace pbrl
