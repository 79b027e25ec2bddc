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
#include <sstream>
#include <vector>

#include "sslearn/errors.hpp"
#include "sslearn/linalg.hpp"

// Dense log-barrier interior-point solver for
//   minimize t  subject to  Z >= 0,  Z >= J,  t I - Tr_out Z >= 0
// over Hermitian Z on (input x output) and real t. Its optimum equals
// max { Tr(J W) : 0 <= W <= rho (x) I, rho a density matrix }, which is half
// the diamond norm of the map whose Choi matrix is J.

namespace sslearn {

struct SdpOptions {
  double gap_tol = 1e-10;
  /// Largest normalized gap accepted when the Newton iteration stalls.
  double accept_gap = 1e-7;
  double mu = 8.0;
  int max_newton = 2000;
};

struct SdpResult {
  double value = 0.0;
  double gap_bound = 0.0;
  int newton_steps = 0;
};

namespace detail {

struct SparseEntry {
  int row;
  int col;
  cplx value;
};

using SparseMat = std::vector<SparseEntry>;

/// Orthonormal basis of Hermitian d x d matrices in sparse form.
inline std::vector<SparseMat> hermitian_basis(int d) {
  std::vector<SparseMat> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < d; ++a) basis.push_back({{a, a, 1.0}});
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      basis.push_back({{a, b, r}, {b, a, r}});
      basis.push_back({{a, b, cplx(0, r)}, {b, a, cplx(0, -r)}});
    }
  return basis;
}

/// Tr(W A) for sparse A.
inline double trace_with(const Matrix& w, const SparseMat& a) {
  cplx acc = 0;
  for (const auto& e : a) acc += w(e.col, e.row) * e.value;
  return acc.real();
}

/// Adds Re Tr(W A_k W A_l) over all pairs into h.
inline void add_hessian(const Matrix& w, const std::vector<SparseMat>& derivs, const std::vector<int>& index,
                        RealMatrix& h) {
  for (size_t k = 0; k < derivs.size(); ++k)
    for (size_t l = k; l < derivs.size(); ++l) {
      cplx acc = 0;
      for (const auto& e1 : derivs[k])
        for (const auto& e2 : derivs[l]) acc += e1.value * e2.value * w(e2.col, e1.row) * w(e1.col, e2.row);
      const double v = acc.real();
      h(index[k], index[l]) += v;
      if (k != l) h(index[l], index[k]) += v;
    }
}

inline bool chol_inverse(const Matrix& m, Matrix& inv, double& logdet) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) return false;
  const Matrix& l = llt.matrixL();
  logdet = 0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double di = l(i, i).real();
    if (!(di > 0)) return false;
    logdet += 2.0 * std::log(di);
  }
  inv = llt.solve(Matrix::Identity(m.rows(), m.cols()));
  return true;
}

}  // namespace detail

/// Half diamond norm from a Hermitian Choi matrix J (input factor first).
inline SdpResult half_diamond_norm_sdp(const Matrix& j_in, int d_in, int d_out, const SdpOptions& opt = {}) {
  using detail::SparseMat;
  const int d = d_in * d_out;
  if (j_in.rows() != d || j_in.cols() != d) throw SdpError("half_diamond_norm_sdp: Choi dimension mismatch");
  SdpResult res;
  const Matrix jh = 0.5 * (j_in + j_in.adjoint());
  const double scale = jh.cwiseAbs().rowwise().sum().maxCoeff();
  if (scale < 1e-300) return res;
  const Matrix j = jh / scale;

  const auto basis = detail::hermitian_basis(d);
  const int nz = static_cast<int>(basis.size());
  const int nvar = nz + 1;
  // derivative of t I - Tr_out Z along each coordinate (Z coordinates, then t)
  std::vector<SparseMat> d3;
  std::vector<int> d3_index;
  for (int k = 0; k < nz; ++k) {
    SparseMat m;
    for (const auto& e : basis[static_cast<size_t>(k)])
      if (e.row % d_out == e.col % d_out) m.push_back({e.row / d_out, e.col / d_out, -e.value});
    if (!m.empty()) {
      d3.push_back(std::move(m));
      d3_index.push_back(k);
    }
  }
  {
    SparseMat m;
    for (int i = 0; i < d_in; ++i) m.push_back({i, i, 1.0});
    d3.push_back(std::move(m));
    d3_index.push_back(nz);
  }
  std::vector<int> z_index(static_cast<size_t>(nz));
  for (int k = 0; k < nz; ++k) z_index[static_cast<size_t>(k)] = k;

  auto build_z = [&](const RealVector& x) {
    Matrix z = Matrix::Zero(d, d);
    for (int k = 0; k < nz; ++k)
      for (const auto& e : basis[static_cast<size_t>(k)]) z(e.row, e.col) += x(k) * e.value;
    return z;
  };
  auto partial_out = [&](const Matrix& z) {
    Matrix r = Matrix::Zero(d_in, d_in);
    for (int i = 0; i < d_in; ++i)
      for (int i2 = 0; i2 < d_in; ++i2)
        for (int o = 0; o < d_out; ++o) r(i, i2) += z(i * d_out + o, i2 * d_out + o);
    return r;
  };

  struct Point {
    Matrix w1, w2, w3;
    double barrier = 0;
  };
  auto evaluate = [&](const RealVector& x, Point& p) {
    const Matrix z = build_z(x);
    const Matrix f3 = x(nz) * Matrix::Identity(d_in, d_in) - partial_out(z);
    double l1, l2, l3;
    if (!detail::chol_inverse(z, p.w1, l1) || !detail::chol_inverse(z - j, p.w2, l2) ||
        !detail::chol_inverse(f3, p.w3, l3))
      return false;
    p.barrier = -(l1 + l2 + l3);
    return true;
  };

  RealVector x = RealVector::Zero(nvar);
  for (int a = 0; a < d; ++a) x(a) = 2.0;  // Z = 2 I
  x(nz) = 2.0 * d_out + 1.0;
  Point pt;
  if (!evaluate(x, pt)) throw SdpError("half_diamond_norm_sdp: infeasible start");
  const double nu = 2.0 * d + d_in;
  double s = 1.0;
  double centred_gap = nu / s;
  bool stalled = false;
  int steps = 0;
  while (!stalled) {
    for (;;) {
      RealVector g = RealVector::Zero(nvar);
      for (int k = 0; k < nz; ++k)
        g(k) = -detail::trace_with(pt.w1, basis[static_cast<size_t>(k)]) -
               detail::trace_with(pt.w2, basis[static_cast<size_t>(k)]);
      for (size_t k = 0; k < d3.size(); ++k) g(d3_index[k]) -= detail::trace_with(pt.w3, d3[k]);
      g(nz) += s;
      RealMatrix h = RealMatrix::Zero(nvar, nvar);
      detail::add_hessian(pt.w1, basis, z_index, h);
      detail::add_hessian(pt.w2, basis, z_index, h);
      detail::add_hessian(pt.w3, d3, d3_index, h);
      // symmetric diagonal scaling keeps the factorization stable near the boundary
      const RealVector dscale = h.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
      const RealMatrix hs = dscale.asDiagonal() * h * dscale.asDiagonal();
      Eigen::LLT<RealMatrix> llt(hs);
      RealVector dx;
      if (llt.info() == Eigen::Success) {
        dx = -(dscale.asDiagonal() * llt.solve(dscale.asDiagonal() * g));
      } else {
        Eigen::LDLT<RealMatrix> ldlt(hs);
        if (ldlt.info() == Eigen::Success) dx = -(dscale.asDiagonal() * ldlt.solve(dscale.asDiagonal() * g));
      }
      if (dx.size() == 0 || !dx.allFinite() || !(-g.dot(dx) >= 0)) {
        // ill-conditioned near the boundary; the last centred point is good enough
        if (centred_gap < opt.accept_gap) {
          stalled = true;
          break;
        }
        std::ostringstream msg;
        msg << "half_diamond_norm_sdp: singular Newton system at gap bound " << centred_gap;
        throw SdpError(msg.str());
      }
      const double decrement = -g.dot(dx);
      if (++steps > opt.max_newton) {
        if (centred_gap < opt.accept_gap) {
          stalled = true;
          break;
        }
        std::ostringstream msg;
        msg << "half_diamond_norm_sdp: no convergence, gap bound " << nu / s << ", Newton decrement " << decrement;
        throw SdpError(msg.str());
      }
      if (decrement < 1e-12) break;
      const double f0 = s * x(nz) + pt.barrier;
      double step = 1.0;
      Point trial;
      RealVector xn;
      bool accepted = false;
      for (int ls = 0; ls < 60 && !accepted; ++ls, step *= 0.5) {
        xn = x + step * dx;
        accepted = evaluate(xn, trial) && s * xn(nz) + trial.barrier <= f0 - 0.25 * step * decrement;
      }
      if (!accepted) {
        if (centred_gap < opt.accept_gap) {
          stalled = true;
          break;
        }
        std::ostringstream msg;
        msg << "half_diamond_norm_sdp: line search failed at gap bound " << centred_gap;
        throw SdpError(msg.str());
      }
      x = xn;
      pt = std::move(trial);
      if (decrement < 1e-6) break;
    }
    if (stalled) break;
    centred_gap = nu / s;
    if (centred_gap < opt.gap_tol) break;
    s *= opt.mu;
  }
  const Matrix tr = partial_out(build_z(x));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (tr + tr.adjoint()), Eigen::EigenvaluesOnly);
  res.value = es.eigenvalues().maxCoeff() * scale;
  res.gap_bound = centred_gap * scale;
  res.newton_steps = steps;
  return res;
}

}  // namespace sslearn
