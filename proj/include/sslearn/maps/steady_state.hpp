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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "sslearn/maps/stepper.hpp"
#include "sslearn/state.hpp"

namespace sslearn {

struct SteadyStateOptions {
  double tol = 1e-6;
  int max_iter = 10000;
  /// When positive, run exactly this many steps instead of iterating to tol.
  int fixed_steps = 0;
};

struct SteadyState {
  DensityMatrix rho;
  int iterations = 0;
  /// Trace distance D(rho, E(rho)) of the returned state.
  double final_gap = 0.0;
  bool converged = false;
  bool fixed_steps = false;
  /// (iteration, Frobenius-norm lower bound on the gap), every 10 iterations.
  std::vector<std::pair<int, double>> log;

  /// True when the iteration stopped without meeting the tolerance.
  bool flagged() const { return !converged && !fixed_steps; }
};

/// Iterates the map from `initial` until D(rho_t, E(rho_t)) < tol.
///
/// The trace distance is bracketed by ||X||_F / 2 <= D <= sqrt(d) ||X||_F / 2,
/// so the full eigendecomposition is only needed inside that bracket.
inline SteadyState steady_state(const MapStepper& map, const DensityMatrix& initial,
                                const SteadyStateOptions& opts = {}) {
  if (initial.n != map.n()) throw std::invalid_argument("steady_state: qubit count mismatch");
  SteadyState out;
  out.fixed_steps = opts.fixed_steps > 0;
  Matrix rho = initial.data;
  const double sqrt_d = std::sqrt(static_cast<double>(rho.rows()));
  const int limit = out.fixed_steps ? opts.fixed_steps : opts.max_iter;
  int since_exact = 0;
  for (int it = 0; it <= limit; ++it) {
    Matrix next = map.apply(rho);
    const double frob = 0.5 * (next - rho).norm();
    if (it % 10 == 0) out.log.emplace_back(it, frob);
    const bool last = it == limit;
    bool done = false;
    double gap = frob;
    if (out.fixed_steps) {
      if (last) {
        gap = trace_norm_half(next - rho);
        done = true;
      }
    } else if (frob * sqrt_d < opts.tol) {
      gap = trace_norm_half(next - rho);
      done = gap < opts.tol;
    } else if (frob < opts.tol && (++since_exact >= 10 || last)) {
      since_exact = 0;
      gap = trace_norm_half(next - rho);
      done = gap < opts.tol;
    } else if (last) {
      gap = trace_norm_half(next - rho);
    }
    if (done || last) {
      out.rho = DensityMatrix{initial.n, std::move(rho)};
      out.iterations = it;
      out.final_gap = gap;
      out.converged = gap < opts.tol;
      return out;
    }
    rho = std::move(next);
  }
  return out;
}

/// A random mixed state from a Ginibre matrix.
inline DensityMatrix random_density_matrix(int n, std::mt19937_64& rng) {
  const Eigen::Index d = Eigen::Index{1} << n;
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix{n, rho};
}

struct UniquenessProbe {
  double max_pairwise_distance = 0.0;
  bool all_converged = true;
};

/// Converges the map from several random initial states and reports the
/// largest pairwise trace distance between the resulting fixed points.
inline UniquenessProbe uniqueness_probe(const MapStepper& map, int count, uint64_t seed,
                                        const SteadyStateOptions& opts = {}) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> states;
  UniquenessProbe probe;
  for (int i = 0; i < count; ++i) {
    SteadyState ss = steady_state(map, random_density_matrix(map.n(), rng), opts);
    probe.all_converged = probe.all_converged && ss.converged;
    states.push_back(std::move(ss.rho.data));
  }
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i + 1; j < states.size(); ++j)
      probe.max_pairwise_distance = std::max(probe.max_pairwise_distance, trace_norm_half(states[i] - states[j]));
  return probe;
}

}  // namespace sslearn
