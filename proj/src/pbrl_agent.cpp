#include "pbrl/pbrl_agent.hpp"

#include <stdexcept>

namespace pbrl {

ThresholdTable make_threshold_table() {
  // All-zero initialization sits at the centre of every signal distribution,
  // so both actions start near-equiprobable.
  return ThresholdTable(kNumStates, 0.0);
}

int decide(double threshold, int sample) {
  return sample > threshold ? kActionRight : kActionLeft;
}

void reward_update(ThresholdTable& table, int state, int action, const PbrlParams& params) {
  const double sign = (action == kActionRight) ? -1.0 : 1.0;  // (-1)^action
  table[state] += sign * params.delta_th;
}

void penalize_trace(ThresholdTable& table, const EpisodeTrace& trace, int fail_step,
                    const PbrlParams& params) {
  if (trace.empty()) return;
  // decay[i] = gamma^(fail_step - step_i), built by repeated multiplication
  // from the failure end so consecutive contributions differ by exactly gamma.
  std::vector<double> decay(trace.size());
  double d = 1.0;
  int step = fail_step;
  for (std::size_t i = trace.size(); i-- > 0;) {
    const int entry_step = trace[i].step;
    if (entry_step > fail_step || entry_step < 1) {
      throw std::invalid_argument("trace step outside [1, fail_step]");
    }
    while (step > entry_step) {
      d *= params.gamma;
      --step;
    }
    decay[i] = d;
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double sign = (trace[i].action == kActionRight) ? -1.0 : 1.0;  // (-1)^action
    table[trace[i].state] -= sign * params.a0 * decay[i];
  }
}

PbrlAgent::PbrlAgent(const PbrlParams& params, std::unique_ptr<SampleStream> stream)
    : params_(params), stream_(std::move(stream)), table_(make_threshold_table()) {
  if (!stream_) throw std::invalid_argument("null sample stream");
}

void PbrlAgent::begin_episode() {
  trace_.clear();
}

int PbrlAgent::act(int state, int step) {
  const int action = decide(table_[state], stream_->next());
  trace_.push_back({state, action, step});
  return action;
}

void PbrlAgent::learn(int state, int action, int step, int /*next_state*/, bool failed) {
  if (failed) {
    penalize_trace(table_, trace_, step, params_);
  } else {
    reward_update(table_, state, action, params_);
  }
}

void PbrlAgent::end_episode(bool /*truncated*/) {
  // An episode that reaches the success cap completes without any penalty;
  // the trace is simply discarded at the next begin_episode().
}

}  // namespace pbrl
