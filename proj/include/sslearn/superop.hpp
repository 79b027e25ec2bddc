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
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sslearn/errors.hpp"
#include "sslearn/linalg.hpp"
#include "sslearn/pauli.hpp"

// Liouville matrices use column stacking: vec(|a><b|) has index a + d*b, so
// vec(A X B) = (B^T kron A) vec(X).

namespace sslearn {

inline Matrix superop_left_right(const Matrix& left, const Matrix& right) {
  return kron(right.transpose(), left);
}

inline Matrix superop_from_kraus(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("superop_from_kraus: no Kraus operators");
  Matrix s = kron(kraus[0].conjugate(), kraus[0]);
  for (size_t i = 1; i < kraus.size(); ++i) s += kron(kraus[i].conjugate(), kraus[i]);
  return s;
}

/// Generator of X -> -i[H, X].
inline Matrix commutator_superop(const Matrix& h) {
  const Matrix id = Matrix::Identity(h.rows(), h.cols());
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

/// Generator of X -> L X L^dagger - {L^dagger L, X}/2.
inline Matrix dissipator_superop(const Matrix& l) {
  const Matrix id = Matrix::Identity(l.rows(), l.cols());
  const Matrix ldl = l.adjoint() * l;
  return kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id);
}

inline Matrix apply_superop_matrix(const Matrix& s, const Matrix& x) {
  const Eigen::Index d = x.rows();
  if (s.cols() != d * d) throw std::invalid_argument("apply_superop_matrix: dimension mismatch");
  Vector v = s * Eigen::Map<const Vector>(x.data(), d * d);
  return Eigen::Map<Matrix>(v.data(), d, d);
}

/// Index bookkeeping for acting with an m-site superoperator on chosen
/// positions of a K-site register. Position 0 is the most significant bit.
class SiteLayout {
 public:
  SiteLayout(int num_sites, std::vector<int> positions) : k_(num_sites), pos_(std::move(positions)) {
    const int m = static_cast<int>(pos_.size());
    if (m == 0 || m > k_) throw std::invalid_argument("SiteLayout: bad position count");
    std::vector<bool> used(static_cast<size_t>(k_), false);
    for (int p : pos_) {
      if (p < 0 || p >= k_ || used[static_cast<size_t>(p)])
        throw std::invalid_argument("SiteLayout: position out of range or repeated");
      used[static_cast<size_t>(p)] = true;
    }
    std::vector<int> rest;
    for (int p = 0; p < k_; ++p)
      if (!used[static_cast<size_t>(p)]) rest.push_back(p);
    local_off_ = offsets(pos_);
    rest_off_ = offsets(rest);
  }

  int num_sites() const { return k_; }
  int local_sites() const { return static_cast<int>(pos_.size()); }
  const std::vector<int>& positions() const { return pos_; }
  const std::vector<uint32_t>& local_offsets() const { return local_off_; }
  const std::vector<uint32_t>& rest_offsets() const { return rest_off_; }

  /// U(a + M b, ra + R rb) = X(local a | rest ra, local b | rest rb).
  Matrix unfold(const Matrix& x) const {
    const auto m = static_cast<Eigen::Index>(local_off_.size());
    const auto r = static_cast<Eigen::Index>(rest_off_.size());
    Matrix u(m * m, r * r);
    for (Eigen::Index rb = 0; rb < r; ++rb)
      for (Eigen::Index ra = 0; ra < r; ++ra) {
        const Eigen::Index col = ra + r * rb;
        const uint32_t ro_a = rest_off_[static_cast<size_t>(ra)];
        const uint32_t ro_b = rest_off_[static_cast<size_t>(rb)];
        for (Eigen::Index b = 0; b < m; ++b)
          for (Eigen::Index a = 0; a < m; ++a)
            u(a + m * b, col) = x(local_off_[static_cast<size_t>(a)] | ro_a, local_off_[static_cast<size_t>(b)] | ro_b);
      }
    return u;
  }

  Matrix fold(const Matrix& u) const {
    const auto m = static_cast<Eigen::Index>(local_off_.size());
    const auto r = static_cast<Eigen::Index>(rest_off_.size());
    const Eigen::Index d = m * r;
    Matrix x(d, d);
    for (Eigen::Index rb = 0; rb < r; ++rb)
      for (Eigen::Index ra = 0; ra < r; ++ra) {
        const Eigen::Index col = ra + r * rb;
        const uint32_t ro_a = rest_off_[static_cast<size_t>(ra)];
        const uint32_t ro_b = rest_off_[static_cast<size_t>(rb)];
        for (Eigen::Index b = 0; b < m; ++b)
          for (Eigen::Index a = 0; a < m; ++a)
            x(local_off_[static_cast<size_t>(a)] | ro_a, local_off_[static_cast<size_t>(b)] | ro_b) = u(a + m * b, col);
      }
    return x;
  }

  /// (S on positions, identity elsewhere) applied to a 2^K x 2^K operator.
  Matrix apply(const Matrix& s, const Matrix& x) const { return fold(s * unfold(x)); }

  /// Liouville matrix of S tensored with the identity on the other positions.
  Matrix embed(const Matrix& s) const {
    const auto m = static_cast<Eigen::Index>(local_off_.size());
    const auto r = static_cast<Eigen::Index>(rest_off_.size());
    const Eigen::Index d = m * r;
    Matrix e = Matrix::Zero(d * d, d * d);
    for (Eigen::Index rb = 0; rb < r; ++rb)
      for (Eigen::Index ra = 0; ra < r; ++ra)
        for (Eigen::Index col = 0; col < m * m; ++col) {
          const Eigen::Index c = col % m, dd = col / m;
          const Eigen::Index in = full(c, ra) + d * full(dd, rb);
          for (Eigen::Index row = 0; row < m * m; ++row) {
            const Eigen::Index a = row % m, b = row / m;
            e(full(a, ra) + d * full(b, rb), in) = s(row, col);
          }
        }
    return e;
  }

  /// Adjoint of embed with respect to the real trace inner product: sums the
  /// identity-padded blocks of a full Liouville seed back onto the positions.
  Matrix reduce(const Matrix& e) const {
    const auto m = static_cast<Eigen::Index>(local_off_.size());
    const auto r = static_cast<Eigen::Index>(rest_off_.size());
    const Eigen::Index d = m * r;
    Matrix s = Matrix::Zero(m * m, m * m);
    for (Eigen::Index rb = 0; rb < r; ++rb)
      for (Eigen::Index ra = 0; ra < r; ++ra)
        for (Eigen::Index col = 0; col < m * m; ++col) {
          const Eigen::Index c = col % m, dd = col / m;
          const Eigen::Index in = full(c, ra) + d * full(dd, rb);
          for (Eigen::Index row = 0; row < m * m; ++row) {
            const Eigen::Index a = row % m, b = row / m;
            s(row, col) += e(full(a, ra) + d * full(b, rb), in);
          }
        }
    return s;
  }

 private:
  Eigen::Index full(Eigen::Index local, Eigen::Index rest) const {
    return static_cast<Eigen::Index>(local_off_[static_cast<size_t>(local)] | rest_off_[static_cast<size_t>(rest)]);
  }

  std::vector<uint32_t> offsets(const std::vector<int>& positions) const {
    const size_t m = positions.size();
    std::vector<uint32_t> off(size_t{1} << m, 0);
    for (size_t a = 0; a < off.size(); ++a) {
      uint32_t o = 0;
      for (size_t q = 0; q < m; ++q)
        if (a & (size_t{1} << (m - 1 - q))) o |= 1u << (k_ - 1 - positions[q]);
      off[a] = o;
    }
    return off;
  }

  int k_;
  std::vector<int> pos_;
  std::vector<uint32_t> local_off_;
  std::vector<uint32_t> rest_off_;
};

/// Choi matrix sum_ij |i><j| (x) S(|i><j|), input factor first.
inline Matrix choi_from_superop(const Matrix& s, Eigen::Index d_in, Eigen::Index d_out) {
  if (s.rows() != d_out * d_out || s.cols() != d_in * d_in)
    throw std::invalid_argument("choi_from_superop: dimension mismatch");
  Matrix j(d_in * d_out, d_in * d_out);
  for (Eigen::Index i = 0; i < d_in; ++i)
    for (Eigen::Index jj = 0; jj < d_in; ++jj)
      for (Eigen::Index o = 0; o < d_out; ++o)
        for (Eigen::Index o2 = 0; o2 < d_out; ++o2)
          j(i * d_out + o, jj * d_out + o2) = s(o + d_out * o2, i + d_in * jj);
  return j;
}

inline Matrix superop_from_choi(const Matrix& j, Eigen::Index d_in, Eigen::Index d_out) {
  Matrix s(d_out * d_out, d_in * d_in);
  for (Eigen::Index i = 0; i < d_in; ++i)
    for (Eigen::Index jj = 0; jj < d_in; ++jj)
      for (Eigen::Index o = 0; o < d_out; ++o)
        for (Eigen::Index o2 = 0; o2 < d_out; ++o2)
          s(o + d_out * o2, i + d_in * jj) = j(i * d_out + o, jj * d_out + o2);
  return s;
}

/// Kraus operators from the eigendecomposition of a PSD Choi matrix.
inline std::vector<Matrix> kraus_from_choi(const Matrix& j, Eigen::Index d_in, Eigen::Index d_out,
                                           double tol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()));
  std::vector<Matrix> kraus;
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index e = es.eigenvalues().size() - 1; e >= 0; --e) {
    const double lam = es.eigenvalues()(e);
    if (lam <= tol * scale) continue;
    Matrix k(d_out, d_in);
    for (Eigen::Index i = 0; i < d_in; ++i)
      for (Eigen::Index o = 0; o < d_out; ++o) k(o, i) = std::sqrt(lam) * es.eigenvectors()(i * d_out + o, e);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) kraus.push_back(Matrix::Zero(d_out, d_in));
  return kraus;
}

inline void validate_sites(const std::vector<int>& sites, const char* who) {
  if (sites.empty() || static_cast<int>(sites.size()) > kMaxLocalSites)
    throw UnsupportedSupport(std::string(who) + ": support must cover 1 to 4 sites");
  for (size_t i = 1; i < sites.size(); ++i)
    if (sites[i] != sites[i - 1] + 1)
      throw std::invalid_argument(std::string(who) + ": sites must be contiguous and increasing");
}

/// A linear map on operators of a contiguous block of sites. Need not be CP or TP.
struct LocalSuperOp {
  std::vector<int> sites;
  Matrix liouville;

  Eigen::Index dim() const { return Eigen::Index{1} << sites.size(); }
  Matrix apply(const Matrix& x) const { return apply_superop_matrix(liouville, x); }
};

/// A CPTP map on a contiguous block of sites, kept in Kraus and Liouville form.
struct LocalChannel {
  std::vector<int> sites;
  std::vector<Matrix> kraus;
  Matrix liouville;

  static LocalChannel from_kraus(std::vector<int> sites, std::vector<Matrix> kraus) {
    validate_sites(sites, "LocalChannel");
    const Eigen::Index d = Eigen::Index{1} << sites.size();
    for (const auto& k : kraus)
      if (k.rows() != d || k.cols() != d) throw std::invalid_argument("LocalChannel: Kraus dimension mismatch");
    Matrix s = superop_from_kraus(kraus);
    return LocalChannel{std::move(sites), std::move(kraus), std::move(s)};
  }

  static LocalChannel from_liouville(std::vector<int> sites, Matrix liouville) {
    validate_sites(sites, "LocalChannel");
    const Eigen::Index d = Eigen::Index{1} << sites.size();
    if (liouville.rows() != d * d || liouville.cols() != d * d)
      throw std::invalid_argument("LocalChannel: Liouville dimension mismatch");
    auto kraus = kraus_from_choi(choi_from_superop(liouville, d, d), d, d);
    return LocalChannel{std::move(sites), std::move(kraus), std::move(liouville)};
  }

  static LocalChannel unitary(std::vector<int> sites, const Matrix& u) { return from_kraus(std::move(sites), {u}); }

  static LocalChannel identity(std::vector<int> sites) {
    const Eigen::Index d = Eigen::Index{1} << sites.size();
    return from_kraus(std::move(sites), {Matrix::Identity(d, d)});
  }

  Eigen::Index dim() const { return Eigen::Index{1} << sites.size(); }

  Matrix apply_kraus(const Matrix& x) const {
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (const auto& k : kraus) out += k * x * k.adjoint();
    return out;
  }

  Matrix apply(const Matrix& x) const { return apply_superop_matrix(liouville, x); }

  LocalSuperOp as_superop() const { return LocalSuperOp{sites, liouville}; }
};

inline LocalSuperOp adjoint(const LocalSuperOp& s) { return LocalSuperOp{s.sites, s.liouville.adjoint()}; }
inline LocalSuperOp adjoint(const LocalChannel& ch) { return LocalSuperOp{ch.sites, ch.liouville.adjoint()}; }

/// Composition b after a on the same sites.
inline LocalChannel compose(const LocalChannel& b, const LocalChannel& a) {
  if (a.sites != b.sites) throw std::invalid_argument("compose: channels act on different sites");
  std::vector<Matrix> kraus;
  for (const auto& kb : b.kraus)
    for (const auto& ka : a.kraus) kraus.push_back(kb * ka);
  return LocalChannel{a.sites, std::move(kraus), b.liouville * a.liouville};
}

inline Matrix choi_matrix(const LocalChannel& ch) { return choi_from_superop(ch.liouville, ch.dim(), ch.dim()); }

/// Embeds a local superoperator on `sites` into the contiguous window
/// first..first+w-1 by tensoring with identities.
inline Matrix embed_superop_in_window(const Matrix& s, const std::vector<int>& sites, int first, int w) {
  std::vector<int> pos;
  for (int q : sites) pos.push_back(q - first);
  if (static_cast<int>(pos.size()) == w) return s;
  return SiteLayout(w, pos).embed(s);
}

/// Pads an operator on `sites` with identities to fill the window first..last.
inline Matrix embed_operator(const Matrix& a, const std::vector<int>& sites, int first, int last) {
  const int lo = sites.front() - first;
  const int hi = last - sites.back();
  const Eigen::Index dlo = Eigen::Index{1} << lo, dhi = Eigen::Index{1} << hi;
  return kron(kron(Matrix::Identity(dlo, dlo), a), Matrix::Identity(dhi, dhi));
}

/// s(A) for an observable A, evaluated on the union window of both supports.
/// When the supports are disjoint and s is unital the result is A itself.
inline LocalOperator apply_adjoint_to_observable(const LocalOperator& a, const LocalSuperOp& s) {
  a.validate();
  validate_sites(s.sites, "apply_adjoint_to_observable");
  const int first = std::min(a.sites.front(), s.sites.front());
  const int last = std::max(a.sites.back(), s.sites.back());
  const bool disjoint = a.sites.back() < s.sites.front() || s.sites.back() < a.sites.front();
  if (disjoint) {
    const Eigen::Index d = s.dim();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix image = apply_superop_matrix(s.liouville, id);
    if ((image - id).cwiseAbs().maxCoeff() <= 1e-10) return a;
  }
  if (last - first + 1 > kMaxLocalSites)
    throw UnsupportedSupport("apply_adjoint_to_observable: union window wider than 4 sites");
  const Matrix big = embed_operator(a.data, a.sites, first, last);
  const Matrix out = SiteLayout(last - first + 1, [&] {
                       std::vector<int> pos;
                       for (int q : s.sites) pos.push_back(q - first);
                       return pos;
                     }()).apply(s.liouville, big);
  return LocalOperator{site_range(first, last), out};
}

}  // namespace sslearn
