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

#include <stdexcept>
#include <utility>
#include <vector>

#include "sslearn/linalg.hpp"
#include "sslearn/superop.hpp"

namespace sslearn {

/// One affine factor a + b * theta[index] of a coefficient.
struct AffineFactor {
  int index;
  double a;
  double b;
};

/// scale * prod_t (a_t + b_t theta[index_t]).
struct Coef {
  double scale = 1.0;
  std::vector<AffineFactor> factors;

  double value(const std::vector<double>& theta) const {
    double v = scale;
    for (const auto& f : factors) v *= f.a + f.b * theta[static_cast<size_t>(f.index)];
    return v;
  }

  /// Adds coef_bar * d(value)/d(theta) into grad.
  void backward(const std::vector<double>& theta, double coef_bar, std::vector<double>& grad) const {
    for (size_t t = 0; t < factors.size(); ++t) {
      double d = scale * factors[t].b;
      for (size_t s = 0; s < factors.size(); ++s)
        if (s != t) d *= factors[s].a + factors[s].b * theta[static_cast<size_t>(factors[s].index)];
      grad[static_cast<size_t>(factors[t].index)] += coef_bar * d;
    }
  }
};

inline Coef linear_coef(int index, double scale = 1.0) { return Coef{scale, {{index, 0.0, 1.0}}}; }

/// A local superoperator depending on theta in one of three ways:
/// fixed, affine (base + sum c_j M_j) or exponential exp(base + sum c_j M_j).
struct Primitive {
  enum class Kind { fixed, linear, exp };

  Kind kind = Kind::fixed;
  std::vector<int> sites;
  Matrix base;
  std::vector<std::pair<Coef, Matrix>> terms;

  Matrix argument(const std::vector<double>& theta) const {
    Matrix g = base;
    for (const auto& [c, m] : terms) g += c.value(theta) * m;
    return g;
  }

  Matrix value(const std::vector<double>& theta) const {
    return kind == Kind::exp ? matrix_exp(argument(theta)) : argument(theta);
  }

  /// Pulls a seed on the value back to theta.
  void backward(const std::vector<double>& theta, const Matrix& seed, std::vector<double>& grad) const {
    if (kind == Kind::fixed || terms.empty()) return;
    const Matrix g_bar = kind == Kind::exp ? exp_pullback(argument(theta), seed) : seed;
    for (const auto& [c, m] : terms) c.backward(theta, re_inner(m, g_bar), grad);
  }
};

inline Primitive fixed_primitive(std::vector<int> sites, Matrix s) {
  return Primitive{Primitive::Kind::fixed, std::move(sites), std::move(s), {}};
}

/// A weighted sum of products of primitives on a common contiguous support:
/// S = sum_b w_b P_{b,m-1} ... P_{b,0}, with P_{b,0} applied first.
class ParamOp {
 public:
  struct Branch {
    double weight = 1.0;
    std::vector<Primitive> factors;
  };

  ParamOp() = default;
  explicit ParamOp(std::vector<int> sites) : sites_(std::move(sites)) { validate_sites(sites_, "ParamOp"); }

  const std::vector<int>& sites() const { return sites_; }
  const std::vector<Branch>& branches() const { return branches_; }
  Eigen::Index dim() const { return Eigen::Index{1} << sites_.size(); }

  void add_branch(Branch b) {
    for (const auto& f : b.factors)
      for (int q : f.sites)
        if (q < sites_.front() || q > sites_.back())
          throw std::invalid_argument("ParamOp: factor outside the operator support");
    branches_.push_back(std::move(b));
  }

  /// Appends the factors of `other` (same support) after every branch; only
  /// valid for single-branch operators.
  void append(const ParamOp& other) {
    if (branches_.size() != 1 || other.branches_.size() != 1)
      throw std::invalid_argument("ParamOp::append: needs single-branch operators");
    for (const auto& f : other.branches_[0].factors) branches_[0].factors.push_back(f);
    branches_[0].weight *= other.branches_[0].weight;
  }

  Matrix value(const std::vector<double>& theta) const {
    const Eigen::Index d2 = dim() * dim();
    Matrix total = Matrix::Zero(d2, d2);
    for (const auto& br : branches_) {
      Matrix acc = Matrix::Identity(d2, d2);
      for (const auto& f : br.factors) acc = embedded(f, f.value(theta)) * acc;
      total += br.weight * acc;
    }
    return total;
  }

  /// Pulls a seed on value() back to theta, accumulating into grad.
  void backward(const std::vector<double>& theta, const Matrix& seed, std::vector<double>& grad) const {
    const Eigen::Index d2 = dim() * dim();
    for (const auto& br : branches_) {
      const size_t m = br.factors.size();
      std::vector<Matrix> vals(m);
      for (size_t i = 0; i < m; ++i) vals[i] = embedded(br.factors[i], br.factors[i].value(theta));
      // prefix[i] = P_{i-1} ... P_0
      std::vector<Matrix> prefix(m + 1);
      prefix[0] = Matrix::Identity(d2, d2);
      for (size_t i = 0; i < m; ++i) prefix[i + 1] = vals[i] * prefix[i];
      Matrix suffix_seed = br.weight * seed;  // L_i^dagger * seed, built from the top down
      for (size_t ii = m; ii-- > 0;) {
        const auto& f = br.factors[ii];
        if (f.kind != Primitive::Kind::fixed && !f.terms.empty()) {
          const Matrix full_seed = suffix_seed * prefix[ii].adjoint();
          f.backward(theta, reduced(f, full_seed), grad);
        }
        suffix_seed = vals[ii].adjoint() * suffix_seed;
      }
    }
  }

 private:
  std::vector<int> positions(const Primitive& f) const {
    std::vector<int> pos;
    for (int q : f.sites) pos.push_back(q - sites_.front());
    return pos;
  }

  Matrix embedded(const Primitive& f, const Matrix& v) const {
    if (f.sites.size() == sites_.size()) return v;
    return SiteLayout(static_cast<int>(sites_.size()), positions(f)).embed(v);
  }

  Matrix reduced(const Primitive& f, const Matrix& full) const {
    if (f.sites.size() == sites_.size()) return full;
    return SiteLayout(static_cast<int>(sites_.size()), positions(f)).reduce(full);
  }

  std::vector<int> sites_;
  std::vector<Branch> branches_;
};

}  // namespace sslearn
