#pragma once

#include <array>
#include <functional>
#include <vector>

#include "pbrl/config.hpp"

namespace pbrl {

/// Figure of merit assigned to parameter vectors outside the search box,
/// short-circuiting without any simulation.
inline constexpr double kGuardFom = 2000.0;

/// Evaluator plus guard predicate. operator() applies the guard first; the
/// wrapped evaluate callback runs only for in-box vectors.
struct Objective {
  std::function<double(const std::vector<double>&)> evaluate;
  std::function<bool(const std::vector<double>&)> in_box;  // null = everything in box
  double guard_value = kGuardFom;

  double operator()(const std::vector<double>& x) const {
    if (in_box && !in_box(x)) return guard_value;
    return evaluate(x);
  }
};

/// Called once per initial evaluation (iteration 0) and once per completed
/// iteration with the best point so far.
using TuneLogger = std::function<void(int iteration, const std::vector<double>& point, double value)>;

struct TuneResult {
  double best_value = 0.0;
  std::vector<double> best_point;
};

/// Derivative-free simplex minimization with the canonical reflection,
/// expansion, contraction, and shrink coefficients (1, 2, 0.5, 0.5). Runs
/// exactly `iterations` simplex transformations; among equal values the
/// earlier vertex wins.
TuneResult nelder_mead(const Objective& objective,
                       std::vector<std::vector<double>> initial_vertices, int iterations = 20,
                       const TuneLogger& log = nullptr);

/// Search boxes: vectors outside evaluate to kGuardFom.
bool pbrl_params_in_box(const std::vector<double>& v);  // [delta_th, a0, gamma]
bool q_params_in_box(const std::vector<double>& v);     // [r_penalty, gamma, alpha, epsilon0]

/// Initial simplex vertices for the two searches.
std::vector<std::vector<double>> pbrl_initial_simplex();
std::vector<std::vector<double>> q_initial_simplex();

/// Ascending start bracket {0, 2(phi-1), 2, 2phi} for the scale-exponent search.
std::array<double, 4> golden_initial_points();

/// Four-point golden-section minimization over the real line, starting from
/// golden_initial_points(). When both endpoint values and both interior
/// values coincide (integer-valued objectives plateau often), all four points
/// contract toward the bracket midpoint by 0.9 instead of narrowing. Runs
/// exactly `iterations` iterations and returns the best evaluated point.
TuneResult golden_section(const std::function<double(double)>& objective, int iterations = 25,
                          const TuneLogger& log = nullptr);

/// [delta_th, a0] scale by 10^c, gamma stays fixed; the delta_th : a0 ratio
/// is preserved across scales.
PbrlParams scale_params(double c, const PbrlParams& base = {3.208, 547.0, 0.6774});

struct TuneOptions {
  int iterations = 20;
  int rounds_per_eval = 480;
};

/// Coarse parameter search [delta_th, a0, gamma] with the normal source.
TuneResult tune_pbrl_nelder_mead(const RunConfig& base, const TuneOptions& options = {20, 480},
                                 const TuneLogger& log = nullptr);

/// Fine-tuning of the scale exponent c on the configured source, starting
/// from the coarse-tuned base [3.208, 547.0, 0.6774].
TuneResult tune_pbrl_golden(const RunConfig& base, const TuneOptions& options = {25, 270},
                            const TuneLogger& log = nullptr);

/// Q-learning search over [r_penalty, gamma, alpha, epsilon0].
TuneResult tune_q_nelder_mead(const RunConfig& base, const TuneOptions& options = {20, 480},
                              const TuneLogger& log = nullptr);

}  // namespace pbrl
