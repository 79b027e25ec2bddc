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
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sslearn/linalg.hpp"
#include "sslearn/superop.hpp"

namespace sslearn {

namespace gates {

inline Matrix identity() { return Matrix::Identity(2, 2); }

inline Matrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

inline Matrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// sigma_+ = (X + iY)/2 = |0><1|.
inline Matrix sigma_plus() { return 0.5 * (x() + kI * y()); }

/// sigma_- = (X - iY)/2 = |1><0|.
inline Matrix sigma_minus() { return 0.5 * (x() - kI * y()); }

inline Matrix sqrt_x() {
  Matrix m(2, 2);
  m << cplx(1, 1), cplx(1, -1), cplx(1, -1), cplx(1, 1);
  return 0.5 * m;
}

inline Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

inline Matrix rz(double phi) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(-kI * (phi / 2));
  m(1, 1) = std::exp(kI * (phi / 2));
  return m;
}

/// Controlled-X with the control as the first (more significant) factor.
inline Matrix cx() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return m;
}

inline Matrix swap() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return m;
}

/// Rz(phi1) X^1/2 Rz(phi2) X^1/2 Rz(phi3); Rz(phi3) acts first.
inline Matrix rotation_from_phis(double phi1, double phi2, double phi3) {
  return rz(phi1) * sqrt_x() * rz(phi2) * sqrt_x() * rz(phi3);
}

}  // namespace gates

/// Re-expresses a two-qubit operator given in (control, target) order on the
/// sorted site pair, swapping factors when the control is the higher site.
inline Matrix orient_pair(const Matrix& op, int control, int target) {
  if (control < target) return op;
  const Matrix s = gates::swap();
  return s * op * s;
}

/// theta1 Z(x)X - theta2 I(x)X - theta3 Z(x)I in (control, target) order.
inline Matrix cx_hamiltonian(double theta1, double theta2, double theta3) {
  return theta1 * kron(gates::z(), gates::x()) - theta2 * kron(gates::identity(), gates::x()) -
         theta3 * kron(gates::z(), gates::identity());
}

enum class LindbladKind { dephase_x, dephase_y, dephase_z, amp_plus, amp_minus };

struct LindbladTerm {
  LindbladKind kind;
  int site;
};

inline Matrix jump_operator(LindbladKind kind) {
  switch (kind) {
    case LindbladKind::dephase_x: return gates::x();
    case LindbladKind::dephase_y: return gates::y();
    case LindbladKind::dephase_z: return gates::z();
    case LindbladKind::amp_plus: return gates::sigma_plus();
    case LindbladKind::amp_minus: return gates::sigma_minus();
  }
  throw std::invalid_argument("jump_operator: unknown kind");
}

/// Single-qubit Liouville generator of one dissipator.
inline Matrix lindblad_superop(LindbladKind kind) { return dissipator_superop(jump_operator(kind)); }

/// Per-qubit noise strengths. The amplitude-damping pair enters as
/// amp * [(1 - ex) L_amp,+ + ex L_amp,-].
struct NoiseStrengths {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double amp = 0.0;
  double ex = 0.0;
};

inline Matrix noise_generator(const NoiseStrengths& s) {
  return s.x * lindblad_superop(LindbladKind::dephase_x) + s.y * lindblad_superop(LindbladKind::dephase_y) +
         s.z * lindblad_superop(LindbladKind::dephase_z) +
         s.amp * (1.0 - s.ex) * lindblad_superop(LindbladKind::amp_plus) +
         s.amp * s.ex * lindblad_superop(LindbladKind::amp_minus);
}

/// exp((T/T0) sum_m theta_m L_m) on one qubit.
inline LocalChannel idle_channel(const NoiseStrengths& s, double t_over_t0, int site) {
  if (t_over_t0 < 0) throw std::invalid_argument("idle_channel: negative duration");
  return LocalChannel::from_liouville({site}, matrix_exp(t_over_t0 * noise_generator(s)));
}

/// exp(-(T/T0) sum_m theta_m L_m); generally not a channel.
inline LocalSuperOp inverse_idle_superop(const NoiseStrengths& s, double t_over_t0, int site) {
  if (t_over_t0 < 0) throw std::invalid_argument("inverse_idle_superop: negative duration");
  return LocalSuperOp{{site}, matrix_exp(-t_over_t0 * noise_generator(s))};
}

/// exp((T/T0)(-i[H, .] + sum_m theta_m L_m)) with one set of strengths per site
/// of H (one or two contiguous sites, first site most significant).
inline LocalChannel noisy_unitary_channel(const Matrix& h, const std::vector<NoiseStrengths>& strengths,
                                          double t_over_t0, const std::vector<int>& sites) {
  if (!is_hermitian(h, 1e-12)) throw std::invalid_argument("noisy_unitary_channel: H is not Hermitian");
  if (t_over_t0 < 0) throw std::invalid_argument("noisy_unitary_channel: negative duration");
  const auto k = static_cast<int>(sites.size());
  if (k < 1 || k > 2 || h.rows() != (Eigen::Index{1} << k) || static_cast<int>(strengths.size()) != k)
    throw std::invalid_argument("noisy_unitary_channel: H must act on one or two sites");
  Matrix gen = commutator_superop(h);
  for (int q = 0; q < k; ++q) {
    const Matrix g = noise_generator(strengths[static_cast<size_t>(q)]);
    gen += k == 1 ? g : SiteLayout(2, {q}).embed(g);
  }
  return LocalChannel::from_liouville(sites, matrix_exp(t_over_t0 * gen));
}

/// First-order splitting U . N: idle noise for the gate duration, then the ideal gate.
inline LocalChannel trotter_noisy_1q(const Matrix& u, const NoiseStrengths& s, double t_over_t0, int site) {
  if (u.rows() != 2 || !(u.adjoint() * u).isIdentity(1e-10))
    throw std::invalid_argument("trotter_noisy_1q: U must be a single-qubit unitary");
  const LocalChannel noise = idle_channel(s, t_over_t0, site);
  return compose(LocalChannel::unitary({site}, u), noise);
}

inline std::vector<Matrix> reset_kraus(double theta0, double theta1) {
  Matrix k00 = Matrix::Zero(2, 2), k01 = Matrix::Zero(2, 2), k10 = Matrix::Zero(2, 2), k11 = Matrix::Zero(2, 2);
  k00(0, 0) = std::sqrt(theta0);
  k01(0, 1) = std::sqrt(theta1);
  k10(1, 0) = std::sqrt(1.0 - theta0);
  k11(1, 1) = std::sqrt(1.0 - theta1);
  return {k00, k01, k10, k11};
}

/// Phenomenological RESET: theta0 keeps |0>, theta1 moves |1> to |0>.
inline LocalChannel noisy_reset(double theta0, double theta1, int site = 0) {
  if (!(theta0 >= 0 && theta0 <= 1 && theta1 >= 0 && theta1 <= 1))
    throw std::invalid_argument("noisy_reset: probabilities must lie in [0, 1]");
  return LocalChannel::from_kraus({site}, reset_kraus(theta0, theta1));
}

}  // namespace sslearn
