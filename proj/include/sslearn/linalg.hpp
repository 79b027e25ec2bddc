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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace sslearn {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double norm1(const Matrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Re Tr(A^dagger B), the real part of the Hilbert-Schmidt inner product.
inline double re_inner(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

namespace detail {

inline constexpr double kPade13[14] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

inline int scaling_power(double norm, double theta) {
  if (!(norm > theta)) return 0;
  return std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta))));
}

}  // namespace detail

/// Matrix exponential by degree-13 Pade approximation with scaling and squaring.
inline Matrix matrix_exp(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exp: matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("matrix_exp: non-finite entries");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  const auto& b = detail::kPade13;
  const int s = detail::scaling_power(norm1(m), 5.371920351148152);
  const Matrix a = m * std::ldexp(1.0, -s);
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix w1 = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const Matrix w2 = b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Matrix z1 = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const Matrix z2 = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  const Matrix u = a * (a6 * w1 + w2);
  const Matrix v = a6 * z1 + z2;
  Matrix r = (v - u).partialPivLu().solve(u + v);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

/// exp(-i t H) for Hermitian H via eigendecomposition.
inline Matrix unitary_exp(const Matrix& h, double t) {
  if (!is_hermitian(h, 1e-10)) throw std::invalid_argument("unitary_exp: generator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::exp(-kI * t * w(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Returns {exp(A), L(A, E)} where L is the Frechet derivative of the
/// exponential at A in direction E (Al-Mohy & Higham, 2009).
inline std::pair<Matrix, Matrix> matrix_exp_frechet(const Matrix& a_in, const Matrix& e_in) {
  if (a_in.rows() != a_in.cols() || e_in.rows() != a_in.rows() || e_in.cols() != a_in.cols())
    throw std::invalid_argument("matrix_exp_frechet: shape mismatch");
  const Eigen::Index n = a_in.rows();
  const auto& b = detail::kPade13;
  const int s = detail::scaling_power(norm1(a_in), 4.74);
  const double scale = std::ldexp(1.0, -s);
  const Matrix a = a_in * scale;
  const Matrix e = e_in * scale;
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix m2 = a * e + e * a;
  const Matrix a4 = a2 * a2;
  const Matrix m4 = a2 * m2 + m2 * a2;
  const Matrix a6 = a2 * a4;
  const Matrix m6 = a4 * m2 + m4 * a2;
  const Matrix w1 = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const Matrix w2 = b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Matrix z1 = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const Matrix z2 = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  const Matrix w = a6 * w1 + w2;
  const Matrix u = a * w;
  const Matrix v = a6 * z1 + z2;
  const Matrix lw1 = b[13] * m6 + b[11] * m4 + b[9] * m2;
  const Matrix lw2 = b[7] * m6 + b[5] * m4 + b[3] * m2;
  const Matrix lz1 = b[12] * m6 + b[10] * m4 + b[8] * m2;
  const Matrix lz2 = b[6] * m6 + b[4] * m4 + b[2] * m2;
  const Matrix lw = a6 * lw1 + m6 * w1 + lw2;
  const Matrix lu = a * lw + e * w;
  const Matrix lv = a6 * lz1 + m6 * z1 + lz2;
  const auto lu_fact = (v - u).partialPivLu();
  Matrix r = lu_fact.solve(u + v);
  Matrix l = lu_fact.solve(lu + lv + (lu - lv) * r);
  for (int k = 0; k < s; ++k) {
    l = r * l + l * r;
    r = r * r;
  }
  return {std::move(r), std::move(l)};
}

/// Pullback of a seed through Y = exp(G): returns L(G^dagger, seed).
inline Matrix exp_pullback(const Matrix& g, const Matrix& seed) {
  return matrix_exp_frechet(g.adjoint(), seed).second;
}

}  // namespace sslearn
