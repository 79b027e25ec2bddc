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
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslearn/maps/stepper.hpp"
#include "sslearn/noise/gates.hpp"
#include "sslearn/state.hpp"

namespace sslearn {

enum class StochasticGate { rescx = 0, sqrt_x = 1, hadamard = 2, rotation = 3 };

inline const char* gate_name(StochasticGate g) {
  switch (g) {
    case StochasticGate::rescx: return "RESCX";
    case StochasticGate::sqrt_x: return "SX";
    case StochasticGate::hadamard: return "H";
    case StochasticGate::rotation: return "R";
  }
  return "?";
}

/// Random mixture of {RESCX, X^1/2, H, R} gates with idle padding to T0.
struct StochasticMapSpec {
  int n = 0;
  /// Gate probabilities in the order RESCX, X^1/2, H, R.
  std::array<double, 4> probs{};
  RotationAngles rotation{};
  GateTiming timing;
  ThetaVector theta;

  void validate() const {
    if (n < 2) throw std::invalid_argument("StochasticMapSpec: need at least two qubits");
    double sum = 0;
    for (double p : probs) {
      if (p < 0) throw std::invalid_argument("StochasticMapSpec: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("StochasticMapSpec: probabilities must sum to 1");
    timing.validate(n);
    if (theta.n() != n) throw std::invalid_argument("StochasticMapSpec: theta has wrong qubit count");
    for (double t : {timing.sqrt_x, timing.hadamard, timing.rotation()})
      if (t > timing.t0 * (1 + 1e-12)) throw std::invalid_argument("StochasticMapSpec: gate longer than T0");
    for (int q = 0; q + 1 < n; ++q)
      for (auto [c, t] : {std::pair{q, q + 1}, std::pair{q + 1, q}})
        if (timing.rescx_time(c, t) > timing.t0 * (1 + 1e-12))
          throw std::invalid_argument("StochasticMapSpec: RESCX longer than T0");
  }
};

/// T0 as the longest gate running time of the stochastic gate set.
inline double stochastic_t0(const GateTiming& timing, int n) {
  double t0 = std::max({timing.sqrt_x, timing.hadamard, timing.rotation()});
  for (int q = 0; q + 1 < n; ++q) t0 = std::max({t0, timing.rescx_time(q, q + 1), timing.rescx_time(q + 1, q)});
  return t0;
}

/// One concrete gate placement of the mixture.
struct Placement {
  StochasticGate gate;
  std::vector<int> sites;
  int control = -1;
  int target = -1;
  double prob = 0.0;
};

/// Splits each gate probability uniformly: p/n over sites for one-qubit gates,
/// p/(2(n-1)) over directed adjacent pairs for RESCX.
inline std::vector<Placement> stochastic_placements(const StochasticMapSpec& spec) {
  std::vector<Placement> out;
  const int n = spec.n;
  for (auto g : {StochasticGate::sqrt_x, StochasticGate::hadamard, StochasticGate::rotation}) {
    const double p = spec.probs[static_cast<size_t>(g)];
    if (p == 0) continue;
    for (int q = 0; q < n; ++q) out.push_back(Placement{g, {q}, -1, -1, p / n});
  }
  const double p = spec.probs[0];
  if (p != 0)
    for (int q = 0; q + 1 < n; ++q)
      for (auto [c, t] : {std::pair{q, q + 1}, std::pair{q + 1, q}})
        out.push_back(Placement{StochasticGate::rescx, {q, q + 1}, c, t, p / (2.0 * (n - 1))});
  return out;
}

inline double placement_time(const StochasticMapSpec& spec, const Placement& pl) {
  switch (pl.gate) {
    case StochasticGate::sqrt_x: return spec.timing.sqrt_x;
    case StochasticGate::hadamard: return spec.timing.hadamard;
    case StochasticGate::rotation: return spec.timing.rotation();
    case StochasticGate::rescx: return spec.timing.rescx_time(pl.control, pl.target);
  }
  return 0.0;
}

/// How the bare noisy gate is dressed with idle noise on its own support.
enum class Dressing {
  /// the noisy gate alone
  bare,
  /// followed by idle noise for T0 - T
  padded,
  /// padded and then deflated by the inverse idle channel for T0
  deflated,
};

/// Operator of one placement, built from theta (which may differ from spec.theta).
inline ParamOp stochastic_gate_op(const ThetaVector& th, const StochasticMapSpec& spec, const Placement& pl,
                                  Dressing dressing) {
  const double t0 = spec.timing.t0;
  std::vector<Primitive> f;
  switch (pl.gate) {
    case StochasticGate::sqrt_x:
      f = trotter_factors(th, pl.sites[0], gates::sqrt_x(), spec.timing.sqrt_x / t0);
      break;
    case StochasticGate::hadamard:
      f = trotter_factors(th, pl.sites[0], gates::hadamard(), spec.timing.hadamard / t0);
      break;
    case StochasticGate::rotation:
      f = rotation_factors(th, pl.sites[0], spec.rotation, spec.timing.sqrt_x / t0);
      break;
    case StochasticGate::rescx:
      f = rescx_factors(th, spec.timing, pl.control, pl.target);
      break;
  }
  if (dressing != Dressing::bare) {
    double tau = (t0 - placement_time(spec, pl)) / t0;
    if (dressing == Dressing::deflated) tau -= 1.0;
    for (int q : pl.sites) f.push_back(idle_primitive(th, q, tau));
  }
  return single_branch(pl.sites, std::move(f));
}

/// Noisy RESET on the target (control idling), then noisy CX(control -> target).
inline LocalChannel build_rescx(int control, int target, const ThetaVector& th, const GateTiming& timing) {
  if (std::abs(control - target) != 1) throw std::invalid_argument("build_rescx: qubits must be adjacent");
  const std::vector<int> sites = {std::min(control, target), std::max(control, target)};
  const ParamOp op = single_branch(sites, rescx_factors(th, timing, control, target));
  return LocalChannel::from_liouville(sites, op.value(th.values()));
}

/// Sum of p_k F_k over the placements of each support, with F_k the deflated
/// placement operator. Index q holds the one-site block of qubit q, index
/// n + q the pair (q, q+1).
inline std::vector<ParamOp> stochastic_support_mixtures(const ThetaVector& th, const StochasticMapSpec& spec) {
  const int n = spec.n;
  std::vector<ParamOp> out;
  for (int q = 0; q < n; ++q) out.emplace_back(std::vector<int>{q});
  for (int q = 0; q + 1 < n; ++q) out.emplace_back(std::vector<int>{q, q + 1});
  for (const auto& pl : stochastic_placements(spec)) {
    const size_t slot = pl.sites.size() == 1 ? static_cast<size_t>(pl.sites[0]) : static_cast<size_t>(n + pl.sites[0]);
    ParamOp op = stochastic_gate_op(th, spec, pl, Dressing::deflated);
    ParamOp::Branch b = op.branches()[0];
    b.weight = pl.prob;
    out[slot].add_branch(std::move(b));
  }
  return out;
}

/// Exact mixture step, evaluated as rho' = N_all(T0)(sum_k p_k F_k(rho)).
class StochasticStepper : public MapStepper {
 public:
  explicit StochasticStepper(const StochasticMapSpec& spec) : n_(spec.n) {
    spec.validate();
    const auto& th = spec.theta;
    for (const auto& op : stochastic_support_mixtures(th, spec))
      if (!op.branches().empty()) mixtures_.emplace_back(n_, op.sites(), op.value(th.values()));
    for (int q = 0; q < n_; ++q) idle_.emplace_back(n_, std::vector<int>{q}, matrix_exp(idle_primitive(th, q, 1.0).argument(th.values())));
  }

  int n() const override { return n_; }

  Matrix apply(const Matrix& x) const override {
    Matrix acc = Matrix::Zero(x.rows(), x.cols());
    for (const auto& m : mixtures_) acc += m.apply(x);
    for (const auto& i : idle_) acc = i.apply(acc);
    return acc;
  }

 private:
  int n_;
  std::vector<SitedSuperOp> mixtures_;
  std::vector<SitedSuperOp> idle_;
};

inline DensityMatrix step_stochastic(const DensityMatrix& rho, const StochasticMapSpec& spec) {
  return StochasticStepper(spec).step(rho);
}

/// Reference form sum_k p_k (padded E_k (x) idle_rest(T0))(rho), applied
/// placement by placement. Used to cross-check the factored stepper.
inline DensityMatrix step_stochastic_direct(const DensityMatrix& rho, const StochasticMapSpec& spec) {
  spec.validate();
  const auto& th = spec.theta;
  Matrix acc = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& pl : stochastic_placements(spec)) {
    const ParamOp op = stochastic_gate_op(th, spec, pl, Dressing::padded);
    Matrix y = apply_local_superop(rho.data, rho.n, pl.sites, op.value(th.values()));
    for (int q = 0; q < rho.n; ++q) {
      if (std::find(pl.sites.begin(), pl.sites.end(), q) != pl.sites.end()) continue;
      y = apply_local_superop(y, rho.n, {q}, idle_op(th, q, 1.0).value(th.values()));
    }
    acc += pl.prob * y;
  }
  return DensityMatrix{rho.n, std::move(acc)};
}

}  // namespace sslearn
