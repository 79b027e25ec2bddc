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

#include "sslearn/learning/constraints.hpp"
#include "sslearn/maps/expectations.hpp"
#include "sslearn/metrics/sdp.hpp"
#include "sslearn/noise/gates.hpp"

namespace sslearn {

/// Half the trace norm of rho - sigma.
inline double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols() || rho.rows() != rho.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  return trace_norm_half(rho - sigma);
}

inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.data, sigma.data);
}

/// Half the diamond norm of the difference of two Liouville matrices on d-dimensional systems.
inline double diamond_distance_liouville(const Matrix& s1, const Matrix& s2, const SdpOptions& opt = {}) {
  if (s1.rows() != s2.rows() || s1.cols() != s2.cols() || s1.rows() != s1.cols())
    throw std::invalid_argument("diamond_distance: dimension mismatch");
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(s1.rows()))));
  if (d * d != s1.rows()) throw std::invalid_argument("diamond_distance: not a Liouville matrix");
  if (d > 4) throw std::invalid_argument("diamond_distance: at most two qubits supported");
  const Matrix j = choi_from_superop(s1 - s2, d, d);
  return half_diamond_norm_sdp(j, static_cast<int>(d), static_cast<int>(d), opt).value;
}

inline double diamond_distance(const LocalChannel& a, const LocalChannel& b, const SdpOptions& opt = {}) {
  if (a.sites != b.sites) throw std::invalid_argument("diamond_distance: channels act on different sites");
  return diamond_distance_liouville(a.liouville, b.liouville, opt);
}

/// Lower bound on the diamond distance from the maximally entangled input.
inline double choi_distance_lower_bound(const Matrix& s1, const Matrix& s2) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(s1.rows()))));
  return trace_norm_half(choi_from_superop(s1 - s2, d, d)) / static_cast<double>(d);
}

enum class GateClass { cx, reset };

inline const char* gate_class_name(GateClass g) { return g == GateClass::cx ? "CX" : "RESET"; }

struct GateComparison {
  std::string gate;
  double d_diamond = 0.0;
  /// "true" or "ideal".
  std::string reference = "true";
};

inline Matrix noisy_cx_superop(const ThetaVector& th, const GateTiming& timing, int control, int target) {
  const double tau = timing.cx_time(control, target) / timing.t0;
  return cx_primitive(th, control, target, tau).value(th.values());
}

inline Matrix noisy_reset_superop(const ThetaVector& th, int q) { return reset_primitive(th, q).value(th.values()); }

/// Gates over which averages are taken: every directed CX pair; RESET on every
/// qubit for the stochastic map and on qubits 0..n-2 for the deterministic map.
inline std::vector<GateComparison> compare_gates(const ThetaVector& a, const ThetaVector& b, GateClass which,
                                                 const GateTiming& timing, ConstraintKind kind,
                                                 const std::string& reference = "true") {
  if (a.n() != b.n()) throw std::invalid_argument("compare_gates: qubit count mismatch");
  const int n = a.n();
  std::vector<GateComparison> out;
  if (which == GateClass::cx) {
    for (int q = 0; q + 1 < n; ++q)
      for (auto [c, t] : {std::pair{q, q + 1}, std::pair{q + 1, q}}) {
        const double d = diamond_distance_liouville(noisy_cx_superop(a, timing, c, t), noisy_cx_superop(b, timing, c, t));
        out.push_back({"CX" + std::to_string(c) + "-" + std::to_string(t), d, reference});
      }
  } else {
    const int count = kind == ConstraintKind::stochastic ? n : n - 1;
    for (int q = 0; q < count; ++q) {
      const double d = diamond_distance_liouville(noisy_reset_superop(a, q), noisy_reset_superop(b, q));
      out.push_back({"RESET" + std::to_string(q), d, reference});
    }
  }
  return out;
}

inline double average_gate_distance(const ThetaVector& learned, const ThetaVector& truth, GateClass which,
                                    const GateTiming& timing, ConstraintKind kind) {
  const auto rows = compare_gates(learned, truth, which, timing, kind);
  double sum = 0;
  for (const auto& r : rows) sum += r.d_diamond;
  return rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
}

/// Clips negative eigenvalues of a Hermitian matrix and renormalizes the trace.
inline Matrix nearest_state(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  RealVector ev = es.eigenvalues().cwiseMax(0.0);
  const double tr = ev.sum();
  if (!(tr > 0)) throw std::invalid_argument("nearest_state: no positive eigenvalues");
  ev /= tr;
  Matrix out = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  return 0.5 * (out + out.adjoint());
}

/// Two-site reduced state on (q, q+1) by linear inversion and eigenvalue clipping.
inline DensityMatrix rdm_from_expectations(const ExpectationTable& table, int q) {
  if (q < 0 || q + 1 >= table.n) throw std::invalid_argument("rdm_from_expectations: pair out of range");
  return DensityMatrix::from_matrix(nearest_state(table.window_operator(q, q + 1)));
}

}  // namespace sslearn
