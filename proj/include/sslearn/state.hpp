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

#include "sslearn/linalg.hpp"
#include "sslearn/pauli.hpp"
#include "sslearn/superop.hpp"

namespace sslearn {

/// A full 2^n x 2^n density matrix on an n-qubit line.
struct DensityMatrix {
  int n = 0;
  Matrix data;

  static DensityMatrix zero_state(int n) {
    if (n < 1) throw std::invalid_argument("DensityMatrix: n must be positive");
    const Eigen::Index d = Eigen::Index{1} << n;
    Matrix m = Matrix::Zero(d, d);
    m(0, 0) = 1.0;
    return DensityMatrix{n, std::move(m)};
  }

  static DensityMatrix from_pure(const Vector& psi) {
    const Eigen::Index d = psi.size();
    int n = 0;
    while ((Eigen::Index{1} << n) < d) ++n;
    if ((Eigen::Index{1} << n) != d) throw std::invalid_argument("DensityMatrix: dimension is not a power of two");
    return DensityMatrix{n, psi * psi.adjoint() / psi.squaredNorm()};
  }

  static DensityMatrix from_matrix(Matrix m) {
    int n = 0;
    while ((Eigen::Index{1} << n) < m.rows()) ++n;
    if ((Eigen::Index{1} << n) != m.rows() || m.rows() != m.cols())
      throw std::invalid_argument("DensityMatrix: dimension is not a power of two");
    return DensityMatrix{n, std::move(m)};
  }

  Eigen::Index dim() const { return data.rows(); }

  /// Checks Hermiticity, unit trace and positivity within the given tolerances.
  bool is_valid(double herm_tol = 1e-12, double trace_tol = 1e-12, double eig_tol = 1e-10) const {
    if (!is_hermitian(data, herm_tol)) return false;
    if (std::abs(data.trace() - cplx(1.0)) > trace_tol) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (data + data.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -eig_tol;
  }
};

inline void check_sites_in_range(const std::vector<int>& sites, int n, const char* who) {
  for (int q : sites)
    if (q < 0 || q >= n) throw std::invalid_argument(std::string(who) + ": site out of range");
}

namespace detail {

/// (K on positions) * X for a 2^n x 2^n matrix X.
inline Matrix apply_left_local(const Matrix& k, const SiteLayout& layout, const Matrix& x) {
  const auto& lo = layout.local_offsets();
  const auto& ro = layout.rest_offsets();
  const auto m = static_cast<Eigen::Index>(lo.size());
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  Matrix block(m, x.cols());
  for (uint32_t r : ro) {
    for (Eigen::Index a = 0; a < m; ++a) block.row(a) = x.row(lo[static_cast<size_t>(a)] | r);
    const Matrix mixed = k * block;
    for (Eigen::Index a = 0; a < m; ++a) out.row(lo[static_cast<size_t>(a)] | r) = mixed.row(a);
  }
  return out;
}

}  // namespace detail

/// Applies a local channel to a global state by contracting its Kraus
/// operators on the channel's sites.
inline DensityMatrix apply_local_channel(const DensityMatrix& rho, const LocalChannel& ch) {
  check_sites_in_range(ch.sites, rho.n, "apply_local_channel");
  const SiteLayout layout(rho.n, ch.sites);
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : ch.kraus) {
    const Matrix left = detail::apply_left_local(k, layout, rho.data);
    out += detail::apply_left_local(k, layout, left.adjoint()).adjoint();
  }
  return DensityMatrix{rho.n, std::move(out)};
}

/// Applies a local Liouville matrix on the given sites of an arbitrary
/// 2^n x 2^n operator.
inline Matrix apply_local_superop(const Matrix& x, int n, const std::vector<int>& sites, const Matrix& s) {
  check_sites_in_range(sites, n, "apply_local_superop");
  return SiteLayout(n, sites).apply(s, x);
}

inline DensityMatrix apply_local_superop(const DensityMatrix& rho, const LocalSuperOp& s) {
  return DensityMatrix{rho.n, apply_local_superop(rho.data, rho.n, s.sites, s.liouville)};
}

/// Reduced operator on the kept sites (in increasing site order).
inline Matrix partial_trace(const Matrix& x, int n, std::vector<int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: nothing to keep");
  std::sort(keep.begin(), keep.end());
  check_sites_in_range(keep, n, "partial_trace");
  if (static_cast<int>(keep.size()) == n) return x;
  const SiteLayout layout(n, keep);
  const auto& lo = layout.local_offsets();
  const auto& ro = layout.rest_offsets();
  const auto m = static_cast<Eigen::Index>(lo.size());
  Matrix out = Matrix::Zero(m, m);
  for (uint32_t r : ro)
    for (Eigen::Index b = 0; b < m; ++b)
      for (Eigen::Index a = 0; a < m; ++a) out(a, b) += x(lo[static_cast<size_t>(a)] | r, lo[static_cast<size_t>(b)] | r);
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  Matrix r = partial_trace(rho.data, rho.n, keep);
  return DensityMatrix{static_cast<int>(keep.size()), std::move(r)};
}

/// Tr(rho P) computed directly from the global matrix.
inline double pauli_expectation(const DensityMatrix& rho, const PauliString& p) {
  if (p.n() != rho.n) throw std::invalid_argument("pauli_expectation: qubit count mismatch");
  return pauli_word_trace(p.label(), rho.data).real();
}

/// Half the trace norm of a Hermitian difference.
inline double trace_norm_half(const Matrix& diff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace sslearn
