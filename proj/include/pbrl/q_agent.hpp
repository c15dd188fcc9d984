#pragma once

#include <array>
#include <random>
#include <vector>

#include "pbrl/agent.hpp"
#include "pbrl/cartpole.hpp"

namespace pbrl {

struct QParams {
  double r_penalty = 773.8;  // penalty for failing before the cutoff step
  double gamma = 0.8494;     // time discount
  double alpha = 0.2265;     // learning rate
  double epsilon0 = 0.4653;  // initial exploration rate
  int penalty_cutoff_step = 145;  // failures at or past this step go unpunished
};

/// Action-value estimates, one row per discrete state, columns for actions 1 and 2.
using QTable = std::vector<std::array<double, 2>>;

QTable make_q_table();

/// epsilon_t = epsilon0 / (t + 1), t counting completed episodes from 0.
double epsilon_schedule(double epsilon0, int episode);

/// With probability epsilon a uniform action, otherwise the argmax of the
/// Q row; exact ties are broken uniformly at random.
int select_action(const QTable& table, int state, double epsilon, std::mt19937_64& rng);

/// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)); the bootstrap
/// term is taken as zero on terminal transitions.
void q_update(QTable& table, int state, int action, double reward, int next_state, bool terminal,
              const QParams& params);

/// +1 for a non-failing action; -r_penalty for a failure before the cutoff
/// step; 0 for a failure at or past it.
double reward_of(bool failed, int step, const QParams& params);

/// Tabular Q-learning with the epsilon-greedy policy.
class QAgent final : public Agent {
 public:
  QAgent(const QParams& params, std::uint64_t seed);

  void begin_episode() override;
  int act(int state, int step) override;
  void learn(int state, int action, int step, int next_state, bool failed) override;
  void end_episode(bool truncated) override;

  const QTable& table() const { return table_; }
  int episodes_completed() const { return episode_; }

 private:
  QParams params_;
  QTable table_;
  std::mt19937_64 rng_;
  int episode_ = 0;
};

}  // namespace pbrl
