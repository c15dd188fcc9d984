#include "pbrl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "pbrl/pbrl_agent.hpp"
#include "pbrl/q_agent.hpp"

namespace pbrl {

namespace {

// Stream tags for per-purpose seed derivation within a round.
constexpr std::uint64_t kResetStream = 1;
constexpr std::uint64_t kAgentStream = 2;
// Series-generation tags at experiment scope.
constexpr std::uint64_t kSeriesStream = 11;
constexpr std::uint64_t kShuffleStream = 13;

// Cursor start offsets jump by a large prime so consecutive rounds read
// well-separated segments of the shared series.
constexpr std::uint64_t kRoundOffsetPrime = 2654435761ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_tag) {
  return splitmix64(seed ^ splitmix64(stream_tag));
}

EpisodeOutcome run_episode(Agent& agent, const EnvConfig& env, std::mt19937_64& reset_rng,
                           int max_steps) {
  EpisodeOutcome out;
  ContinuousState state = reset_state(reset_rng);
  int s = discretize(state, env);
  out.visited.insert(s);
  agent.begin_episode();
  for (int t = 1; t <= max_steps; ++t) {
    const int action = agent.act(s, t);
    auto [next_state, failed] = step(state, action, env);
    const int s_next = discretize(next_state, env);
    agent.learn(s, action, t, s_next, failed);
    if (failed) {
      agent.end_episode(false);
      out.steps_survived = t - 1;
      return out;
    }
    out.visited.insert(s_next);
    state = next_state;
    s = s_next;
  }
  agent.end_episode(true);
  out.steps_survived = max_steps;
  return out;
}

SampleSeries build_series(const SourceSpec& source, const RunConfig& config) {
  switch (source.kind) {
    case SourceKind::kChaosFile:
      return load_series(source.path, config.base_period_ps);
    case SourceKind::kSyntheticChaos:
      return gen_synthetic_chaos(config.series_length, config.chaos_lag,
                                 mix_seed(config.base_seed, kSeriesStream));
    case SourceKind::kSurrogate: {
      if (!source.inner) throw std::invalid_argument("surrogate source without inner spec");
      return shuffle_surrogate(build_series(*source.inner, config),
                               mix_seed(config.base_seed, kShuffleStream));
    }
    case SourceKind::kNormal:
      return gen_normal(config.series_length, config.normal_sigma,
                        mix_seed(config.base_seed, kSeriesStream));
    case SourceKind::kUniform:
      return gen_uniform(config.series_length, mix_seed(config.base_seed, kSeriesStream));
  }
  throw std::logic_error("unreachable source kind");
}

Experiment::Experiment(const RunConfig& config) : config_(config) {
  if (config_.agent == AgentKind::kPbrl && config_.source.series_backed()) {
    series_ = std::make_shared<SampleSeries>(build_series(config_.source, config_));
  }
}

std::unique_ptr<Agent> Experiment::make_agent(int round_index, std::uint64_t round_seed) const {
  if (config_.agent == AgentKind::kQLearning) {
    return std::make_unique<QAgent>(config_.q, mix_seed(round_seed, kAgentStream));
  }
  std::unique_ptr<SampleStream> stream;
  if (series_) {
    const std::size_t offset = static_cast<std::size_t>(
        (static_cast<std::uint64_t>(round_index) * kRoundOffsetPrime) % series_->size());
    stream = std::make_unique<CursorStream>(*series_, static_cast<std::size_t>(config_.stride),
                                            offset);
  } else if (config_.source.kind == SourceKind::kNormal) {
    stream = std::make_unique<NormalStream>(config_.normal_sigma,
                                            mix_seed(round_seed, kAgentStream));
  } else {
    stream = std::make_unique<UniformStream>(mix_seed(round_seed, kAgentStream));
  }
  return std::make_unique<PbrlAgent>(config_.pbrl, std::move(stream));
}

RoundResult Experiment::run_round(int round_index) const {
  const std::uint64_t round_seed = config_.base_seed + static_cast<std::uint64_t>(round_index);
  auto agent = make_agent(round_index, round_seed);
  std::mt19937_64 reset_rng(mix_seed(round_seed, kResetStream));

  const int windows = (config_.episodes + kWindowEpisodes - 1) / kWindowEpisodes;
  std::vector<std::set<int>> window_sets(windows);

  RoundResult result;
  result.success_steps.reserve(config_.episodes);
  for (int e = 0; e < config_.episodes; ++e) {
    EpisodeOutcome outcome = run_episode(*agent, config_.env, reset_rng, config_.max_steps);
    result.success_steps.push_back(outcome.steps_survived);
    window_sets[e / kWindowEpisodes].insert(outcome.visited.begin(), outcome.visited.end());
  }
  result.window_states.reserve(windows);
  for (const auto& ws : window_sets) {
    result.window_states.emplace_back(ws.begin(), ws.end());
  }
  return result;
}

ExperimentResult Experiment::run() const {
  const int rounds = config_.rounds;
  std::vector<RoundResult> results(rounds);

  int jobs = config_.jobs;
  if (jobs == 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, rounds);

  if (jobs == 1) {
    for (int r = 0; r < rounds; ++r) results[r] = run_round(r);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= rounds) return;
        try {
          results[r] = run_round(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  // Aggregate in round-index order: the averages are identical no matter how
  // rounds were scheduled.
  ExperimentResult out;
  out.curves.mean_success.resize(config_.episodes);
  for (int e = 0; e < config_.episodes; ++e) {
    std::int64_t sum = 0;
    for (const auto& r : results) sum += r.success_steps[e];
    out.curves.mean_success[e] = static_cast<double>(sum) / rounds;
  }
  out.curves.mean_variety = variety_of_states(results);
  out.curves.fom = compute_fom(out.curves.mean_success,
                               static_cast<double>(config_.fom_threshold), config_.episodes);
  out.rounds = std::move(results);
  return out;
}

std::vector<double> variety_of_states(const std::vector<RoundResult>& rounds) {
  if (rounds.empty()) throw std::invalid_argument("variety_of_states: no rounds");
  const std::size_t windows = rounds.front().window_states.size();
  std::vector<double> variety(windows, 0.0);
  for (const auto& r : rounds) {
    if (r.window_states.size() != windows) {
      throw std::invalid_argument("variety_of_states: inconsistent window counts");
    }
    for (std::size_t w = 0; w < windows; ++w) {
      variety[w] += static_cast<double>(r.window_states[w].size());
    }
  }
  for (auto& v : variety) v /= static_cast<double>(rounds.size());
  return variety;
}

int compute_fom(const std::vector<double>& mean_success, double threshold, int cap) {
  if (mean_success.empty()) throw std::invalid_argument("compute_fom: empty curve");
  if (mean_success.back() < threshold) return cap;
  for (int i = static_cast<int>(mean_success.size()) - 1; i >= 0; --i) {
    if (mean_success[i] < threshold) return i + 1;
  }
  return 0;
}

}  // namespace pbrl
