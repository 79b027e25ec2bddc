// Copyright 2026 The sslearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "sslearn/errors.hpp"
#include "sslearn/learning/constraints.hpp"
#include "sslearn/noise/theta.hpp"

namespace sslearn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int max_steps = 15000;
  /// Plateau rule: stop at step i when cost(i - window) - cost(i) < fraction * cost(i - window).
  int plateau_window = 500;
  double plateau_fraction = 0.0025;
  /// Keep every k-th cost in the report trajectory.
  int trajectory_stride = 10;
};

enum class StopReason { max_steps, plateau };

inline const char* stop_reason_name(StopReason r) { return r == StopReason::plateau ? "plateau" : "max-steps"; }

struct OptimizerReport {
  /// Parameters with the lowest cost seen.
  ThetaVector theta_est;
  double final_cost = 0.0;
  double initial_cost = 0.0;
  int steps = 0;
  StopReason stop_reason = StopReason::max_steps;
  /// (step, cost) pairs, decimated.
  std::vector<std::pair<int, double>> trajectory;
  /// Free parameters whose gradient was exactly zero at the start.
  std::vector<std::string> zero_gradient;
};

/// Value and gradient of an objective over the full parameter vector.
using Objective = std::function<double(const std::vector<double>&, std::vector<double>*)>;

inline bool plateau_reached(const std::vector<double>& costs, int window, double fraction) {
  const auto i = costs.size() - 1;
  if (costs.size() <= static_cast<size_t>(window)) return false;
  const double before = costs[i - static_cast<size_t>(window)];
  return before - costs[i] < fraction * before;
}

/// Projected Adam: standard moment updates on the free entries, then clamping
/// to the box. Gradient components pushing a parameter out through an active
/// bound are zeroed before the moment update.
inline OptimizerReport adam_minimize(const Objective& objective, const ThetaVector& init, const AdamConfig& cfg = {}) {
  init.check_bounds();
  ThetaVector th = init;
  const auto free = th.free_indices();
  std::vector<double> m(free.size(), 0.0), v(free.size(), 0.0), grad;
  std::vector<double> costs;
  OptimizerReport rep;
  rep.theta_est = th;
  double best = 0;
  for (int step = 0;; ++step) {
    const double cost = objective(th.values(), &grad);
    if (!std::isfinite(cost)) throw OptimizerError("adam_minimize: non-finite cost at step " + std::to_string(step));
    costs.push_back(cost);
    if (step == 0) {
      rep.initial_cost = cost;
      for (int i : free)
        if (grad[static_cast<size_t>(i)] == 0.0) rep.zero_gradient.push_back(th.name(i));
    }
    if (step == 0 || cost < best) {
      best = cost;
      rep.theta_est = th;
    }
    if (step % cfg.trajectory_stride == 0) rep.trajectory.emplace_back(step, cost);
    rep.steps = step;
    if (step >= cfg.max_steps) {
      rep.stop_reason = StopReason::max_steps;
      break;
    }
    if (plateau_reached(costs, cfg.plateau_window, cfg.plateau_fraction)) {
      rep.stop_reason = StopReason::plateau;
      break;
    }
    const double t = step + 1;
    const double c1 = 1.0 - std::pow(cfg.beta1, t), c2 = 1.0 - std::pow(cfg.beta2, t);
    for (size_t k = 0; k < free.size(); ++k) {
      const int i = free[k];
      double g = grad[static_cast<size_t>(i)];
      if (!std::isfinite(g)) throw OptimizerError("adam_minimize: non-finite gradient for " + th.name(i));
      if ((th[i] <= th.lower(i) && g > 0) || (th[i] >= th.upper(i) && g < 0)) g = 0.0;
      m[k] = cfg.beta1 * m[k] + (1 - cfg.beta1) * g;
      v[k] = cfg.beta2 * v[k] + (1 - cfg.beta2) * g * g;
      const double upd = cfg.learning_rate * (m[k] / c1) / (std::sqrt(v[k] / c2) + cfg.epsilon);
      th.set(i, std::clamp(th[i] - upd, th.lower(i), th.upper(i)));
    }
  }
  if (rep.trajectory.empty() || rep.trajectory.back().first != rep.steps) rep.trajectory.emplace_back(rep.steps, costs.back());
  rep.final_cost = best;
  return rep;
}

/// Minimizes the steady-state constraint cost from `init`.
inline OptimizerReport adam_minimize(const QuadraticCost& cost, const ThetaVector& init, const AdamConfig& cfg = {}) {
  Objective f = [&cost](const std::vector<double>& theta, std::vector<double>* grad) {
    CostEvaluation e = cost.evaluate(theta, grad != nullptr);
    if (grad) *grad = std::move(e.gradient);
    return e.total;
  };
  return adam_minimize(f, init, cfg);
}

}  // namespace sslearn
