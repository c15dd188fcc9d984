#include "pbrl/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbrl/harness.hpp"

namespace pbrl {

namespace {

constexpr double kReflection = 1.0;
constexpr double kExpansion = 2.0;
constexpr double kContraction = 0.5;
constexpr double kShrink = 0.5;

constexpr double kPhi = 1.6180339887498948482;
constexpr double kPlateauShrink = 0.9;

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

struct BestTracker {
  double value = 0.0;
  std::vector<double> point;
  bool seen = false;

  void offer(const std::vector<double>& x, double f) {
    if (!seen || f < value) {
      value = f;
      point = x;
      seen = true;
    }
  }
};

}  // namespace

TuneResult nelder_mead(const Objective& objective,
                       std::vector<std::vector<double>> initial_vertices, int iterations,
                       const TuneLogger& log) {
  if (initial_vertices.size() < 2) throw std::invalid_argument("nelder_mead: need >= 2 vertices");
  const std::size_t dim = initial_vertices.front().size();
  if (initial_vertices.size() != dim + 1) {
    throw std::invalid_argument("nelder_mead: vertex count must be dimension + 1");
  }
  for (const auto& v : initial_vertices) {
    if (v.size() != dim) throw std::invalid_argument("nelder_mead: inconsistent dimensions");
  }
  for (std::size_t i = 0; i < initial_vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < initial_vertices.size(); ++j) {
      if (initial_vertices[i] == initial_vertices[j]) {
        throw std::invalid_argument("degenerate simplex");
      }
    }
  }
  if (iterations < 0) throw std::invalid_argument("nelder_mead: iterations must be >= 0");

  BestTracker best;
  std::vector<Vertex> simplex(initial_vertices.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    simplex[i].x = std::move(initial_vertices[i]);
    simplex[i].f = objective(simplex[i].x);
    best.offer(simplex[i].x, simplex[i].f);
    if (log) log(0, simplex[i].x, simplex[i].f);
  }

  auto evaluate = [&](const std::vector<double>& x) {
    const double f = objective(x);
    best.offer(x, f);
    return f;
  };

  const std::size_t n = simplex.size() - 1;  // worst index after ordering
  for (int iter = 1; iter <= iterations; ++iter) {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i].x[d];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto along = [&](double coef, const std::vector<double>& towards) {
      std::vector<double> x(dim);
      for (std::size_t d = 0; d < dim; ++d) x[d] = centroid[d] + coef * (towards[d] - centroid[d]);
      return x;
    };

    const Vertex& worst = simplex[n];
    std::vector<double> reflected = along(-kReflection, worst.x);
    const double f_reflected = evaluate(reflected);

    bool shrink = false;
    if (f_reflected < simplex[0].f) {
      std::vector<double> expanded = along(-kExpansion, worst.x);
      const double f_expanded = evaluate(expanded);
      if (f_expanded < f_reflected) {
        simplex[n] = {std::move(expanded), f_expanded};
      } else {
        simplex[n] = {std::move(reflected), f_reflected};
      }
    } else if (f_reflected < simplex[n - 1].f) {
      simplex[n] = {std::move(reflected), f_reflected};
    } else if (f_reflected < worst.f) {
      // outside contraction
      std::vector<double> contracted = along(-kContraction, worst.x);
      const double f_contracted = evaluate(contracted);
      if (f_contracted <= f_reflected) {
        simplex[n] = {std::move(contracted), f_contracted};
      } else {
        shrink = true;
      }
    } else {
      // inside contraction
      std::vector<double> contracted = along(kContraction, worst.x);
      const double f_contracted = evaluate(contracted);
      if (f_contracted < worst.f) {
        simplex[n] = {std::move(contracted), f_contracted};
      } else {
        shrink = true;
      }
    }

    if (shrink) {
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
          simplex[i].x[d] = simplex[0].x[d] + kShrink * (simplex[i].x[d] - simplex[0].x[d]);
        }
        simplex[i].f = evaluate(simplex[i].x);
      }
    }

    if (log) log(iter, best.point, best.value);
  }

  return {best.value, best.point};
}

bool pbrl_params_in_box(const std::vector<double>& v) {
  return v.size() == 3 && (v[0] > 0.0 && v[0] < 10.0) && (v[1] > 10.0 && v[1] < 1000.0) &&
         (v[2] > 0.0 && v[2] < 1.0);
}

bool q_params_in_box(const std::vector<double>& v) {
  return v.size() == 4 && (v[0] > 0.0 && v[0] < 1000.0) && (v[1] > 0.0 && v[1] < 1.0) &&
         (v[2] > 0.0 && v[2] < 1.0) && (v[3] > 0.0 && v[3] < 1.0);
}

std::vector<std::vector<double>> pbrl_initial_simplex() {
  const double d_th = 0.1, d_a0 = 1.0, d_gamma = 0.01;
  return {
      {d_th, 10.0 + d_a0, 1.0 - d_gamma},
      {d_th, 1000.0 - d_a0, 0.5},
      {10.0 - d_th, 10.0 + d_a0, 0.5},
      {d_th, 10.0 + d_a0, d_gamma},
  };
}

std::vector<std::vector<double>> q_initial_simplex() {
  const double d_r = 1.0, d = 0.01;
  return {
      {1000.0 - d_r, d, d, d},
      {1000.0 - d_r, 0.5, d, d},
      {d_r, 1.0 - d, 0.5, 1.0 - d},
      {d_r, d, 1.0 - d, 0.5},
      {d_r, d, d, d},
  };
}

std::array<double, 4> golden_initial_points() {
  return {0.0, 2.0 * (kPhi - 1.0), 2.0, 2.0 * kPhi};
}

TuneResult golden_section(const std::function<double(double)>& objective, int iterations,
                          const TuneLogger& log) {
  if (iterations < 0) throw std::invalid_argument("golden_section: iterations must be >= 0");

  struct Point {
    double c;
    double f;
  };
  BestTracker best;
  auto evaluate = [&](double c) {
    const double f = objective(c);
    best.offer({c}, f);
    return f;
  };

  const auto init = golden_initial_points();
  std::array<Point, 4> p;
  for (std::size_t i = 0; i < 4; ++i) {
    p[i] = {init[i], evaluate(init[i])};
    if (log) log(0, {p[i].c}, p[i].f);
  }

  const double lower_frac = 2.0 - kPhi;  // interior point fractions of the bracket
  const double upper_frac = kPhi - 1.0;

  for (int iter = 1; iter <= iterations; ++iter) {
    if (p[0].f == p[3].f && p[1].f == p[2].f) {
      // Plateau: narrowing cannot choose a side, so contract the whole
      // bracket toward its midpoint.
      const double centre = 0.5 * (p[0].c + p[3].c);
      for (auto& point : p) {
        point.c = centre + kPlateauShrink * (point.c - centre);
        point.f = evaluate(point.c);
      }
    } else if (p[1].f <= p[2].f) {
      // Minimum bracketed in [p0, p2].
      const double c_new = p[0].c + lower_frac * (p[2].c - p[0].c);
      p = {p[0], Point{c_new, evaluate(c_new)}, p[1], p[2]};
    } else {
      // Minimum bracketed in [p1, p3].
      const double c_new = p[1].c + upper_frac * (p[3].c - p[1].c);
      p = {p[1], p[2], Point{c_new, evaluate(c_new)}, p[3]};
    }
    if (log) log(iter, best.point, best.value);
  }

  return {best.value, best.point};
}

PbrlParams scale_params(double c, const PbrlParams& base) {
  if (!std::isfinite(c)) throw std::invalid_argument("scale_params: c must be finite");
  const double scale = std::pow(10.0, c);
  PbrlParams out;
  out.delta_th = scale * base.delta_th;
  out.a0 = scale * base.a0;
  out.gamma = base.gamma;
  return out;
}

namespace {

double fom_of(const RunConfig& cfg) {
  return static_cast<double>(Experiment(cfg).run().curves.fom);
}

}  // namespace

TuneResult tune_pbrl_nelder_mead(const RunConfig& base, const TuneOptions& options,
                                 const TuneLogger& log) {
  RunConfig cfg = base;
  cfg.agent = AgentKind::kPbrl;
  // Coarse tuning always runs on normally distributed pseudorandom numbers;
  // the other sources are fine-tuned afterwards through the scale exponent.
  cfg.source = SourceSpec::parse("normal");
  cfg.rounds = options.rounds_per_eval;
  Objective objective;
  objective.in_box = pbrl_params_in_box;
  objective.evaluate = [cfg](const std::vector<double>& v) mutable {
    cfg.pbrl.delta_th = v[0];
    cfg.pbrl.a0 = v[1];
    cfg.pbrl.gamma = v[2];
    return fom_of(cfg);
  };
  return nelder_mead(objective, pbrl_initial_simplex(), options.iterations, log);
}

TuneResult tune_pbrl_golden(const RunConfig& base, const TuneOptions& options,
                            const TuneLogger& log) {
  RunConfig cfg = base;
  cfg.agent = AgentKind::kPbrl;
  cfg.rounds = options.rounds_per_eval;
  const PbrlParams scale_base{3.208, 547.0, 0.6774};
  auto objective = [cfg, scale_base](double c) mutable {
    const PbrlParams p = scale_params(c, scale_base);
    if (!pbrl_params_in_box({p.delta_th, p.a0, p.gamma})) return kGuardFom;
    cfg.pbrl = p;
    return fom_of(cfg);
  };
  return golden_section(objective, options.iterations, log);
}

TuneResult tune_q_nelder_mead(const RunConfig& base, const TuneOptions& options,
                              const TuneLogger& log) {
  RunConfig cfg = base;
  cfg.agent = AgentKind::kQLearning;
  cfg.rounds = options.rounds_per_eval;
  Objective objective;
  objective.in_box = q_params_in_box;
  objective.evaluate = [cfg](const std::vector<double>& v) mutable {
    cfg.q.r_penalty = v[0];
    cfg.q.gamma = v[1];
    cfg.q.alpha = v[2];
    cfg.q.epsilon0 = v[3];
    return fom_of(cfg);
  };
  return nelder_mead(objective, q_initial_simplex(), options.iterations, log);
}

}  // namespace pbrl
