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

#include <string>
#include <vector>

#include "sslearn/errors.hpp"
#include "sslearn/learning/constraints.hpp"
#include "sslearn/maps/stochastic.hpp"
#include "sslearn/noise/lindblad.hpp"
#include "sslearn/superop.hpp"

// Named views of the pieces QuadraticCost fuses together. They are slower
// than the fused evaluator and exist for inspection and tests.

namespace sslearn {

/// F_k = (inverse idle noise for T0 on supp(k)) . (padded noisy gate k).
inline LocalSuperOp f_k_superop(const ThetaVector& th, const StochasticMapSpec& spec, const Placement& pl) {
  const ParamOp op = stochastic_gate_op(th, spec, pl, Dressing::deflated);
  return LocalSuperOp{op.sites(), op.value(th.values())};
}

/// A pushed through the adjoint idle channel for T0 on each site of its window.
inline LocalOperator tilde_observable(const PauliString& a, const ThetaVector& th) {
  if (a.is_identity()) throw std::invalid_argument("tilde_observable: identity has no window");
  const auto [first, last] = a.window();
  LocalOperator out{site_range(first, last), pauli_word_matrix(a.letters_on(first, last))};
  for (int q = first; q <= last; ++q) {
    const LocalChannel idle = idle_channel(th.strengths(q), 1.0, q);
    out = apply_adjoint_to_observable(out, adjoint(idle));
  }
  return out;
}

/// Residual of observable `a`, restricted to constraint groups whose support
/// starts at `first` when first >= 0. Assembled from the explicit Pauli
/// expansion and table lookups; throws MissingData naming an absent Pauli.
inline double constraint_residual(const QuadraticCost& cost, const PauliString& a, const ThetaVector& th,
                                  int first = -1) {
  const auto& cs = cost.constraints();
  size_t index = 0;
  for (const auto& g : cs.groups) {
    const bool group_ok = first < 0 || g.support.front() == first;
    for (const auto& w : g.words) {
      if (group_ok && PauliString::on_window(cs.n, g.support.front(), w) == a)
        return cost.residual_from_expansion(index, th.values());
      ++index;
    }
  }
  throw std::invalid_argument("constraint_residual: " + a.label() + " is not a constraint observable");
}

inline double stochastic_residual(const QuadraticCost& cost, const PauliString& a, const ThetaVector& th) {
  if (cost.constraints().kind != ConstraintKind::stochastic)
    throw std::invalid_argument("stochastic_residual: constraint set is deterministic");
  return constraint_residual(cost, a, th);
}

/// Residual of observable `a` in the constraint of pair (j, j+1). Single-site
/// observables belong to two pairs, hence the explicit pair index.
inline double deterministic_residual(const QuadraticCost& cost, int j, const PauliString& a, const ThetaVector& th) {
  if (cost.constraints().kind != ConstraintKind::deterministic)
    throw std::invalid_argument("deterministic_residual: constraint set is stochastic");
  return constraint_residual(cost, a, th, j);
}

}  // namespace sslearn
