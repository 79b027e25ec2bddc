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

#include <array>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sslearn/noise/lindblad.hpp"
#include "sslearn/noise/param_op.hpp"
#include "sslearn/noise/theta.hpp"

// Builders for the theta-dependent gate operators. Durations enter as
// dimensionless tau = T / T0.

namespace sslearn {

/// Rotation angles phi1, phi2, phi3 of Rz(phi1) X^1/2 Rz(phi2) X^1/2 Rz(phi3).
using RotationAngles = std::array<double, 3>;

namespace detail {

inline bool fixed_zero(const ThetaVector& th, int i) { return !th.is_free(i) && th[i] == 0.0; }

}  // namespace detail

/// exp(tau * sum_m theta_m L_m) on qubit q; tau may be negative for inverses.
inline Primitive idle_primitive(const ThetaVector& th, int q, double tau) {
  Primitive p{Primitive::Kind::exp, {q}, Matrix::Zero(4, 4), {}};
  using S = ThetaVector::Slot;
  const int ix = th.qubit_index(q, S::kX), iy = th.qubit_index(q, S::kY), iz = th.qubit_index(q, S::kZ);
  const int ia = th.qubit_index(q, S::kAmp), ie = th.qubit_index(q, S::kEx);
  if (tau == 0.0) return p;
  auto add = [&](Coef c, LindbladKind kind) { p.terms.emplace_back(std::move(c), lindblad_superop(kind)); };
  if (!detail::fixed_zero(th, ix)) add(linear_coef(ix, tau), LindbladKind::dephase_x);
  if (!detail::fixed_zero(th, iy)) add(linear_coef(iy, tau), LindbladKind::dephase_y);
  if (!detail::fixed_zero(th, iz)) add(linear_coef(iz, tau), LindbladKind::dephase_z);
  if (!detail::fixed_zero(th, ia)) {
    add(Coef{tau, {{ia, 0.0, 1.0}, {ie, 1.0, -1.0}}}, LindbladKind::amp_plus);
    if (!detail::fixed_zero(th, ie)) add(Coef{tau, {{ia, 0.0, 1.0}, {ie, 0.0, 1.0}}}, LindbladKind::amp_minus);
  }
  return p;
}

inline Primitive unitary_primitive(std::vector<int> sites, const Matrix& u) {
  return fixed_primitive(std::move(sites), superop_left_right(u, u.adjoint()));
}

/// Noisy RESET; affine in (theta0, theta1).
inline Primitive reset_primitive(const ThetaVector& th, int q) {
  auto ket = [](int r, int c) {
    Matrix m = Matrix::Zero(2, 2);
    m(r, c) = 1.0;
    return superop_from_kraus({m});
  };
  const Matrix s00 = ket(0, 0), s01 = ket(0, 1), s10 = ket(1, 0), s11 = ket(1, 1);
  Primitive p{Primitive::Kind::linear, {q}, s10 + s11, {}};
  p.terms.emplace_back(linear_coef(th.qubit_index(q, ThetaVector::kReset0)), s00 - s10);
  p.terms.emplace_back(linear_coef(th.qubit_index(q, ThetaVector::kReset1)), s01 - s11);
  return p;
}

/// Noisy CX(control -> target): exp(-i (pi/4) [H_CX, .] + tau sum_m theta_m L_m)
/// over both qubits, where tau is the CX duration over T0. The coherent part
/// always completes the gate; tau sets only the exposure to noise.
inline Primitive cx_primitive(const ThetaVector& th, int control, int target, double tau) {
  const int lo = std::min(control, target), hi = std::max(control, target);
  if (hi - lo != 1) throw std::invalid_argument("cx_primitive: qubits must be adjacent");
  Primitive p{Primitive::Kind::exp, {lo, hi}, Matrix::Zero(16, 16), {}};
  const double quarter = std::numbers::pi / 4;
  const Matrix i2 = gates::identity();
  const std::array<Matrix, 3> parts = {kron(gates::z(), gates::x()), -kron(i2, gates::x()), -kron(gates::z(), i2)};
  for (int m = 1; m <= 3; ++m) {
    const Matrix h = orient_pair(parts[static_cast<size_t>(m - 1)], control, target);
    p.terms.emplace_back(linear_coef(th.cx_index(control, target, m), quarter), commutator_superop(h));
  }
  for (int q : {lo, hi}) {
    const Primitive idle = idle_primitive(th, q, tau);
    const SiteLayout layout(2, {q - lo});
    for (const auto& [c, m] : idle.terms) p.terms.emplace_back(c, layout.embed(m));
  }
  return p;
}

inline ParamOp single_branch(std::vector<int> sites, std::vector<Primitive> factors, double weight = 1.0) {
  ParamOp op(std::move(sites));
  op.add_branch(ParamOp::Branch{weight, std::move(factors)});
  return op;
}

inline ParamOp idle_op(const ThetaVector& th, int q, double tau) { return single_branch({q}, {idle_primitive(th, q, tau)}); }

/// Idle noise on every site of a contiguous block.
inline ParamOp idle_block_op(const ThetaVector& th, const std::vector<int>& sites, double tau) {
  std::vector<Primitive> f;
  for (int q : sites) f.push_back(idle_primitive(th, q, tau));
  return single_branch(sites, std::move(f));
}

/// Trotterized single-qubit gate: idle noise for tau, then U.
inline std::vector<Primitive> trotter_factors(const ThetaVector& th, int q, const Matrix& u, double tau) {
  return {idle_primitive(th, q, tau), unitary_primitive({q}, u)};
}

/// Noisy R(phi1, phi2, phi3): two Trotterized X^1/2 gates around noiseless,
/// instantaneous Rz gates.
inline std::vector<Primitive> rotation_factors(const ThetaVector& th, int q, const RotationAngles& phi,
                                               double tau_sqrt_x) {
  std::vector<Primitive> f;
  f.push_back(unitary_primitive({q}, gates::rz(phi[2])));
  for (auto& p : trotter_factors(th, q, gates::sqrt_x(), tau_sqrt_x)) f.push_back(std::move(p));
  f.push_back(unitary_primitive({q}, gates::rz(phi[1])));
  for (auto& p : trotter_factors(th, q, gates::sqrt_x(), tau_sqrt_x)) f.push_back(std::move(p));
  f.push_back(unitary_primitive({q}, gates::rz(phi[0])));
  return f;
}

/// RESET on the target with the control idling, then noisy CX(control -> target).
inline std::vector<Primitive> rescx_factors(const ThetaVector& th, const GateTiming& timing, int control,
                                            int target) {
  const double t0 = timing.t0;
  return {reset_primitive(th, target),
          idle_primitive(th, control, timing.reset.at(static_cast<size_t>(target)) / t0),
          cx_primitive(th, control, target, timing.cx_time(control, target) / t0)};
}

/// Two rotations (same angles on both qubits) in parallel, then CX.
inline std::vector<Primitive> rotated_cx_factors(const ThetaVector& th, const GateTiming& timing, int k,
                                                 const RotationAngles& phi, int control, int target) {
  const double t0 = timing.t0;
  std::vector<Primitive> f = rotation_factors(th, k, phi, timing.sqrt_x / t0);
  for (auto& p : rotation_factors(th, k + 1, phi, timing.sqrt_x / t0)) f.push_back(std::move(p));
  f.push_back(cx_primitive(th, control, target, timing.cx_time(control, target) / t0));
  return f;
}

/// RESU on (k, k+1): U1 = CX(k -> k+1) after rotations, then RESET on k with
/// k+1 idling, then U2 = CX(k+1 -> k) after rotations.
inline std::vector<Primitive> resu_factors(const ThetaVector& th, const GateTiming& timing, int k,
                                           const RotationAngles& u1, const RotationAngles& u2) {
  std::vector<Primitive> f = rotated_cx_factors(th, timing, k, u1, k, k + 1);
  f.push_back(reset_primitive(th, k));
  f.push_back(idle_primitive(th, k + 1, timing.reset.at(static_cast<size_t>(k)) / timing.t0));
  for (auto& p : rotated_cx_factors(th, timing, k, u2, k + 1, k)) f.push_back(std::move(p));
  return f;
}

}  // namespace sslearn
