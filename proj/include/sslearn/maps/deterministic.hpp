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
#include <stdexcept>
#include <vector>

#include "sslearn/maps/stepper.hpp"
#include "sslearn/noise/gates.hpp"
#include "sslearn/state.hpp"

// Pairs are indexed by their first qubit k = 0..n-2. The 1-based label is
// k + 1, so odd-labelled pairs (k even) form the odd layer.

namespace sslearn {

/// Angles of one RESU gate: the rotation used before the first CX (U1) and
/// before the second CX (U2).
struct ResuAngles {
  RotationAngles u1{};
  RotationAngles u2{};
};

/// Order I applies the even layer then the odd layer; order II the reverse.
enum class LayerOrder { I, II };

struct DeterministicMapSpec {
  int n = 0;
  ResuAngles even;
  ResuAngles odd;
  GateTiming timing;
  ThetaVector theta;
  LayerOrder order = LayerOrder::I;

  void validate() const {
    if (n < 3) throw std::invalid_argument("DeterministicMapSpec: need at least three qubits");
    timing.validate(n);
    if (theta.n() != n) throw std::invalid_argument("DeterministicMapSpec: theta has wrong qubit count");
    for (int k = 0; k + 1 < n; ++k)
      if (timing.resu_time(k) > timing.t0 * (1 + 1e-12))
        throw std::invalid_argument("DeterministicMapSpec: RESU longer than T0");
  }
};

inline bool pair_in_odd_layer(int k) { return k % 2 == 0; }

/// First qubits of the pairs in one layer.
inline std::vector<int> layer_pairs(int n, bool odd_layer) {
  std::vector<int> out;
  for (int k = 0; k + 1 < n; ++k)
    if (pair_in_odd_layer(k) == odd_layer) out.push_back(k);
  return out;
}

/// Qubits not covered by any pair of the layer.
inline std::vector<int> layer_uncovered(int n, bool odd_layer) {
  std::vector<bool> covered(static_cast<size_t>(n), false);
  for (int k : layer_pairs(n, odd_layer)) covered[static_cast<size_t>(k)] = covered[static_cast<size_t>(k + 1)] = true;
  std::vector<int> out;
  for (int q = 0; q < n; ++q)
    if (!covered[static_cast<size_t>(q)]) out.push_back(q);
  return out;
}

/// T0 as the longest RESU running time.
inline double deterministic_t0(const GateTiming& timing, int n) {
  double t0 = 0;
  for (int k = 0; k + 1 < n; ++k) t0 = std::max(t0, timing.resu_time(k));
  return t0;
}

inline const ResuAngles& angles_for_pair(const DeterministicMapSpec& spec, int k) {
  return pair_in_odd_layer(k) ? spec.odd : spec.even;
}

/// Noisy RESU on (k, k+1), optionally padded with idle noise up to T0.
inline ParamOp resu_op(const ThetaVector& th, const DeterministicMapSpec& spec, int k, bool padded) {
  const ResuAngles& a = angles_for_pair(spec, k);
  std::vector<Primitive> f = resu_factors(th, spec.timing, k, a.u1, a.u2);
  if (padded) {
    const double tau = (spec.timing.t0 - spec.timing.resu_time(k)) / spec.timing.t0;
    f.push_back(idle_primitive(th, k, tau));
    f.push_back(idle_primitive(th, k + 1, tau));
  }
  return single_branch({k, k + 1}, std::move(f));
}

inline LocalChannel build_resu(int k, const ResuAngles& angles, const ThetaVector& th, const GateTiming& timing) {
  if (k < 0 || k + 1 >= th.n()) throw std::invalid_argument("build_resu: pair out of range");
  const ParamOp op = single_branch({k, k + 1}, resu_factors(th, timing, k, angles.u1, angles.u2));
  return LocalChannel::from_liouville({k, k + 1}, op.value(th.values()));
}

/// Applies the two brick-wall layers. Qubits left uncovered by a layer idle for T0.
class DeterministicStepper : public MapStepper {
 public:
  explicit DeterministicStepper(const DeterministicMapSpec& spec) : n_(spec.n) {
    spec.validate();
    const auto& th = spec.theta;
    auto build_layer = [&](bool odd) {
      std::vector<SitedSuperOp> layer;
      for (int k : layer_pairs(n_, odd)) layer.emplace_back(n_, std::vector<int>{k, k + 1}, resu_op(th, spec, k, true).value(th.values()));
      for (int q : layer_uncovered(n_, odd)) layer.emplace_back(n_, std::vector<int>{q}, idle_op(th, q, 1.0).value(th.values()));
      return layer;
    };
    auto even = build_layer(false);
    auto odd = build_layer(true);
    if (spec.order == LayerOrder::I) {
      first_ = std::move(even);
      second_ = std::move(odd);
    } else {
      first_ = std::move(odd);
      second_ = std::move(even);
    }
  }

  int n() const override { return n_; }

  Matrix apply(const Matrix& x) const override {
    Matrix y = x;
    for (const auto& op : first_) y = op.apply(y);
    for (const auto& op : second_) y = op.apply(y);
    return y;
  }

 private:
  int n_;
  std::vector<SitedSuperOp> first_;
  std::vector<SitedSuperOp> second_;
};

inline DensityMatrix step_deterministic(const DensityMatrix& rho, const DeterministicMapSpec& spec) {
  return DeterministicStepper(spec).step(rho);
}

}  // namespace sslearn
