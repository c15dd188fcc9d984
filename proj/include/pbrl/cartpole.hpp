#pragma once

#include <random>
#include <utility>

namespace pbrl {

inline constexpr int kBinsPerVar = 6;
inline constexpr int kNumStates = kBinsPerVar * kBinsPerVar * kBinsPerVar * kBinsPerVar;  // 1296
inline constexpr int kActionRight = 1;  // push the cart to the right
inline constexpr int kActionLeft = 2;   // push the cart to the left

struct ContinuousState {
  double x = 0.0;          // cart position (m)
  double x_dot = 0.0;      // cart velocity (m/s)
  double theta = 0.0;      // pole angle (rad)
  double theta_dot = 0.0;  // pole angular velocity (rad/s)
};

/// Physics constants, failure bounds, and the symmetric discretization
/// ranges used to map the four state variables onto 6^4 bins.
struct EnvConfig {
  double gravity = 9.8;
  double mass_cart = 1.0;
  double mass_pole = 0.1;
  double pole_half_length = 0.5;
  double force_mag = 10.0;
  double tau = 0.02;  // integration step (s)

  double x_limit = 2.4;
  double theta_limit = 12.0 * 3.14159265358979323846 / 180.0;

  // Half-widths of the discretization ranges [-r, +r]; values outside clamp
  // to the edge bins.
  double x_range = 2.4;
  double x_dot_range = 3.0;
  double theta_range = 12.0 * 3.14159265358979323846 / 180.0;
  double theta_dot_range = 2.0;
};

/// Initial state: each variable drawn independently uniform in [-0.05, 0.05].
ContinuousState reset_state(std::mt19937_64& rng);

/// One explicit-Euler step of the cart-pole dynamics (positions updated with
/// pre-step velocities). Returns the successor state and whether it lies
/// outside the failure bounds.
std::pair<ContinuousState, bool> step(const ContinuousState& state, int action,
                                      const EnvConfig& config);

/// Composite bin index in [0, 1296): each variable is clamped into its range
/// and mapped to one of six equal-width bins, half-open on the left with the
/// top bin closed.
int discretize(const ContinuousState& state, const EnvConfig& config);

}  // namespace pbrl
