#pragma once

#include <memory>
#include <vector>

#include "pbrl/agent.hpp"
#include "pbrl/cartpole.hpp"
#include "pbrl/series.hpp"

namespace pbrl {

/// Learning constants for the parallel-bandit threshold agent. Thresholds are
/// expressed in signal-level units but are themselves unbounded: the tuned
/// failure penalties exceed the signal range on purpose, which is what drives
/// a state from exploration into a committed action.
struct PbrlParams {
  double delta_th = 1.767;  // per-success threshold shift
  double a0 = 301.3;        // failure penalty amplitude
  double gamma = 0.6774;    // per-step decay of the penalty toward older steps
};

/// One real threshold per discrete state; the whole learning state of the agent.
using ThresholdTable = std::vector<double>;

ThresholdTable make_threshold_table();

struct TraceEntry {
  int state;
  int action;
  int step;  // 1-based step index within the episode
};

/// States and actions visited since the episode start, in order.
using EpisodeTrace = std::vector<TraceEntry>;

/// Action 1 iff the sample exceeds the threshold; ties go to action 2.
int decide(double threshold, int sample);

/// Success update: shift the acted state's threshold by delta_th toward
/// repeating the action (action 1 lowers it, action 2 raises it).
void reward_update(ThresholdTable& table, int state, int action, const PbrlParams& params);

/// Failure update: every trace entry's threshold moves away from its action
/// by a0 * gamma^(fail_step - step), heaviest near the failure. Entries for
/// the same state accumulate in trace order.
void penalize_trace(ThresholdTable& table, const EpisodeTrace& trace, int fail_step,
                    const PbrlParams& params);

/// The threshold-table learner. All stochasticity enters through the sample
/// stream; with a constant stream the agent is fully deterministic.
class PbrlAgent final : public Agent {
 public:
  PbrlAgent(const PbrlParams& params, std::unique_ptr<SampleStream> stream);

  void begin_episode() override;
  int act(int state, int step) override;
  void learn(int state, int action, int step, int next_state, bool failed) override;
  void end_episode(bool truncated) override;

  const ThresholdTable& thresholds() const { return table_; }
  const EpisodeTrace& trace() const { return trace_; }

 private:
  PbrlParams params_;
  std::unique_ptr<SampleStream> stream_;
  ThresholdTable table_;
  EpisodeTrace trace_;
};

}  // namespace pbrl
