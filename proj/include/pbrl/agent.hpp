#pragma once

namespace pbrl {

/// Episode-scoped learner driven by the harness loop. `act` is called in the
/// current discrete state, then `learn` with the outcome of that action.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual void begin_episode() = 0;

  /// Choose an action (1 or 2) in `state` at 1-based step index `step`.
  virtual int act(int state, int step) = 0;

  virtual void learn(int state, int action, int step, int next_state, bool failed) = 0;

  /// Called once per episode after the final step; `truncated` is true when
  /// the episode hit the success cap instead of failing.
  virtual void end_episode(bool truncated) = 0;
};

}  // namespace pbrl
