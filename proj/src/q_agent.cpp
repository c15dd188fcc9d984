#include "pbrl/q_agent.hpp"

#include <algorithm>
#include <stdexcept>

namespace pbrl {

QTable make_q_table() {
  return QTable(kNumStates, {0.0, 0.0});
}

double epsilon_schedule(double epsilon0, int episode) {
  if (episode < 0) throw std::invalid_argument("episode must be >= 0");
  return epsilon0 / (episode + 1);
}

int select_action(const QTable& table, int state, double epsilon, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  if (unit(rng) < epsilon) {
    return kActionRight + coin(rng);
  }
  const auto& row = table[state];
  if (row[0] > row[1]) return kActionRight;
  if (row[1] > row[0]) return kActionLeft;
  return kActionRight + coin(rng);
}

void q_update(QTable& table, int state, int action, double reward, int next_state, bool terminal,
              const QParams& params) {
  double& q = table[state][action - 1];
  const double bootstrap =
      terminal ? 0.0 : std::max(table[next_state][0], table[next_state][1]);
  q += params.alpha * (reward + params.gamma * bootstrap - q);
}

double reward_of(bool failed, int step, const QParams& params) {
  if (step < 1) throw std::invalid_argument("step must be >= 1");
  if (!failed) return 1.0;
  if (step < params.penalty_cutoff_step) return -params.r_penalty;
  return 0.0;
}

QAgent::QAgent(const QParams& params, std::uint64_t seed)
    : params_(params), table_(make_q_table()), rng_(seed) {}

void QAgent::begin_episode() {}

int QAgent::act(int state, int /*step*/) {
  return select_action(table_, state, epsilon_schedule(params_.epsilon0, episode_), rng_);
}

void QAgent::learn(int state, int action, int step, int next_state, bool failed) {
  q_update(table_, state, action, reward_of(failed, step, params_), next_state, failed, params_);
}

void QAgent::end_episode(bool /*truncated*/) {
  ++episode_;
}

}  // namespace pbrl
