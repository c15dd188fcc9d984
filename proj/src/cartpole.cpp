#include "pbrl/cartpole.hpp"

#include <cmath>
#include <stdexcept>

namespace pbrl {

ContinuousState reset_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-0.05, 0.05);
  ContinuousState s;
  s.x = dist(rng);
  s.x_dot = dist(rng);
  s.theta = dist(rng);
  s.theta_dot = dist(rng);
  return s;
}

std::pair<ContinuousState, bool> step(const ContinuousState& state, int action,
                                      const EnvConfig& config) {
  if (!(std::isfinite(state.x) && std::isfinite(state.x_dot) && std::isfinite(state.theta) &&
        std::isfinite(state.theta_dot))) {
    throw std::invalid_argument("non-finite state");
  }
  if (action != kActionRight && action != kActionLeft) {
    throw std::invalid_argument("action must be 1 (right) or 2 (left)");
  }

  const double force = (action == kActionRight) ? config.force_mag : -config.force_mag;
  const double total_mass = config.mass_cart + config.mass_pole;
  const double polemass_length = config.mass_pole * config.pole_half_length;

  const double cos_theta = std::cos(state.theta);
  const double sin_theta = std::sin(state.theta);

  const double temp =
      (force + polemass_length * state.theta_dot * state.theta_dot * sin_theta) / total_mass;
  const double theta_acc =
      (config.gravity * sin_theta - cos_theta * temp) /
      (config.pole_half_length * (4.0 / 3.0 - config.mass_pole * cos_theta * cos_theta / total_mass));
  const double x_acc = temp - polemass_length * theta_acc * cos_theta / total_mass;

  ContinuousState next;
  next.x = state.x + config.tau * state.x_dot;
  next.x_dot = state.x_dot + config.tau * x_acc;
  next.theta = state.theta + config.tau * state.theta_dot;
  next.theta_dot = state.theta_dot + config.tau * theta_acc;

  const bool failed =
      std::abs(next.x) > config.x_limit || std::abs(next.theta) > config.theta_limit;
  return {next, failed};
}

namespace {

int bin_of(double value, double half_range) {
  const double width = 2.0 * half_range / kBinsPerVar;
  int b = static_cast<int>(std::floor((value + half_range) / width));
  if (b < 0) b = 0;
  if (b >= kBinsPerVar) b = kBinsPerVar - 1;  // top bin closed, out-of-range clamps
  return b;
}

}  // namespace

int discretize(const ContinuousState& state, const EnvConfig& config) {
  const int bx = bin_of(state.x, config.x_range);
  const int bxd = bin_of(state.x_dot, config.x_dot_range);
  const int bt = bin_of(state.theta, config.theta_range);
  const int btd = bin_of(state.theta_dot, config.theta_dot_range);
  return ((bx * kBinsPerVar + bxd) * kBinsPerVar + bt) * kBinsPerVar + btd;
}

}  // namespace pbrl
