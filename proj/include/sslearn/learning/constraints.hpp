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
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sslearn/errors.hpp"
#include "sslearn/maps/deterministic.hpp"
#include "sslearn/maps/expectations.hpp"
#include "sslearn/maps/stochastic.hpp"
#include "sslearn/noise/param_op.hpp"
#include "sslearn/pauli.hpp"

// Every constraint has the form
//   r_A(theta) = sum_t c_t Re Tr(A . Chain_t(rho_Wt)) - <A>,
// where Chain_t is a product of local theta-dependent superoperators acting
// on the reduced state of a window W_t of at most four sites. The reduced
// states are rebuilt from the measured Pauli expectations, so r_A is a
// linear function of the data whose coefficients depend smoothly on theta.

namespace sslearn {

enum class ConstraintKind { stochastic, deterministic };

struct ChainTerm {
  double coef = 1.0;
  int first = 0;
  int last = 0;
  /// Indices into ConstraintSet::ops, in application order.
  std::vector<int> ops;
};

/// Observables sharing a support, a data table and a list of chain terms.
struct ConstraintGroup {
  std::vector<int> support;
  int state = 0;
  std::vector<std::string> words;
  std::vector<ChainTerm> terms;
  /// Union of the term windows (the light cone of the group).
  int cone_first = 0;
  int cone_last = 0;
};

class ConstraintSet {
 public:
  ConstraintKind kind = ConstraintKind::stochastic;
  int n = 0;
  int num_states = 1;
  std::vector<ParamOp> ops;
  std::vector<ConstraintGroup> groups;

  /// Observables: every Pauli supported inside a window of at most two sites.
  /// Needs three-site data. Operators are built with the parameter layout of
  /// `layout`; evaluate with any theta of the same qubit count.
  static ConstraintSet stochastic(const StochasticMapSpec& spec, const ThetaVector& layout) {
    ConstraintSet cs;
    cs.kind = ConstraintKind::stochastic;
    cs.n = spec.n;
    cs.num_states = 1;
    const int n = spec.n;
    auto mixtures = stochastic_support_mixtures(layout, spec);
    std::vector<int> site_op(static_cast<size_t>(n), -1), pair_op(static_cast<size_t>(n), -1), idle(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q)
      if (!mixtures[static_cast<size_t>(q)].branches().empty()) site_op[static_cast<size_t>(q)] = cs.add_op(std::move(mixtures[static_cast<size_t>(q)]));
    for (int q = 0; q + 1 < n; ++q)
      if (!mixtures[static_cast<size_t>(n + q)].branches().empty())
        pair_op[static_cast<size_t>(q)] = cs.add_op(std::move(mixtures[static_cast<size_t>(n + q)]));
    for (int q = 0; q < n; ++q) idle[static_cast<size_t>(q)] = cs.add_op(idle_op(layout, q, 1.0));

    const auto placements = stochastic_placements(spec);
    auto intersect_prob = [&](int a, int b) {
      double p = 0;
      for (const auto& pl : placements)
        if (pl.sites.back() >= a && pl.sites.front() <= b) p += pl.prob;
      return p;
    };

    for (int width = 1; width <= 2; ++width)
      for (int a = 0; a + width <= n; ++a) {
        const int b = a + width - 1;
        ConstraintGroup g;
        g.support = site_range(a, b);
        g.state = 0;
        for (const auto& w : all_pauli_words(width))
          if (w.find('I') == std::string::npos) g.words.push_back(w);
        std::vector<int> tilde;
        for (int q = a; q <= b; ++q) tilde.push_back(idle[static_cast<size_t>(q)]);
        auto add_term = [&](int op, int first, int last) {
          ChainTerm t{1.0, std::min(first, a), std::max(last, b), {op}};
          t.ops.insert(t.ops.end(), tilde.begin(), tilde.end());
          g.terms.push_back(std::move(t));
        };
        for (int q = a; q <= b; ++q)
          if (site_op[static_cast<size_t>(q)] >= 0) add_term(site_op[static_cast<size_t>(q)], q, q);
        for (int q = std::max(0, a - 1); q <= std::min(b, n - 2); ++q)
          if (pair_op[static_cast<size_t>(q)] >= 0) add_term(pair_op[static_cast<size_t>(q)], q, q + 1);
        g.terms.push_back(ChainTerm{1.0 - intersect_prob(a, b), a, b, tilde});
        cs.finish_group(std::move(g));
      }
    return cs;
  }

  /// Observables: the 15 non-identity Paulis on each pair (k, k+1), read from
  /// the order-I steady state for odd-layer pairs and order II otherwise.
  /// Needs four-site data.
  static ConstraintSet deterministic(const DeterministicMapSpec& spec, const ThetaVector& layout) {
    ConstraintSet cs;
    cs.kind = ConstraintKind::deterministic;
    cs.n = spec.n;
    cs.num_states = 2;
    const int n = spec.n;
    std::vector<int> resu(static_cast<size_t>(n - 1)), idle(static_cast<size_t>(n));
    for (int k = 0; k + 1 < n; ++k) resu[static_cast<size_t>(k)] = cs.add_op(resu_op(layout, spec, k, true));
    for (int q = 0; q < n; ++q) idle[static_cast<size_t>(q)] = cs.add_op(idle_op(layout, q, 1.0));
    for (int k = 0; k + 1 < n; ++k) {
      ConstraintGroup g;
      g.support = {k, k + 1};
      g.state = pair_in_odd_layer(k) ? 0 : 1;
      for (const auto& w : all_pauli_words(2))
        if (w != "II") g.words.push_back(w);
      ChainTerm t;
      t.first = std::max(0, k - 1);
      t.last = std::min(n - 1, k + 2);
      t.ops.push_back(k >= 1 ? resu[static_cast<size_t>(k - 1)] : idle[static_cast<size_t>(k)]);
      t.ops.push_back(k + 2 <= n - 1 ? resu[static_cast<size_t>(k + 1)] : idle[static_cast<size_t>(k + 1)]);
      t.ops.push_back(resu[static_cast<size_t>(k)]);
      g.terms.push_back(std::move(t));
      cs.finish_group(std::move(g));
    }
    return cs;
  }

  size_t num_observables() const {
    size_t c = 0;
    for (const auto& g : groups) c += g.words.size();
    return c;
  }

  /// Observables in evaluation order, with the data table each one reads.
  std::vector<std::pair<PauliString, int>> observables() const {
    std::vector<std::pair<PauliString, int>> out;
    for (const auto& g : groups)
      for (const auto& w : g.words) out.emplace_back(PauliString::on_window(n, g.support.front(), w), g.state);
    return out;
  }

  /// Every Pauli string the constraints read from the given data table.
  std::vector<PauliString> required_paulis(int state) const {
    std::set<PauliString> out;
    for (const auto& g : groups) {
      if (g.state != state) continue;
      for (const auto& t : g.terms)
        for (const auto& w : all_pauli_words(t.last - t.first + 1)) {
          PauliString p = PauliString::on_window(n, t.first, w);
          if (!p.is_identity()) out.insert(p);
        }
      for (const auto& w : g.words) out.insert(PauliString::on_window(n, g.support.front(), w));
    }
    return {out.begin(), out.end()};
  }

 private:
  int add_op(ParamOp op) {
    ops.push_back(std::move(op));
    return static_cast<int>(ops.size()) - 1;
  }

  void finish_group(ConstraintGroup g) {
    g.cone_first = g.support.front();
    g.cone_last = g.support.back();
    for (const auto& t : g.terms) {
      if (t.last - t.first + 1 > kMaxLocalSites) throw UnsupportedSupport("constraint window wider than 4 sites");
      g.cone_first = std::min(g.cone_first, t.first);
      g.cone_last = std::max(g.cone_last, t.last);
    }
    groups.push_back(std::move(g));
  }
};

/// Per-observable residuals and, optionally, the gradient of their squared sum.
struct CostEvaluation {
  double total = 0.0;
  std::vector<double> residuals;
  std::vector<double> gradient;
};

/// A constraint set bound to measured expectation tables.
class QuadraticCost {
 public:
  QuadraticCost(const ConstraintSet& cs, std::vector<ExpectationTable> data) : cs_(&cs), data_(std::move(data)) {
    if (static_cast<int>(data_.size()) != cs.num_states)
      throw std::invalid_argument("QuadraticCost: wrong number of data tables");
    for (const auto& t : data_)
      if (t.n != cs.n) throw std::invalid_argument("QuadraticCost: data table has wrong qubit count");
    for (const auto& g : cs.groups) {
      BoundGroup bg;
      for (const auto& w : g.words) {
        bg.measured.push_back(data_[static_cast<size_t>(g.state)].value(PauliString::on_window(cs.n, g.support.front(), w)));
        bg.word_matrices.push_back(pauli_word_matrix(w));
      }
      for (const auto& t : g.terms) {
        BoundTerm bt;
        const int w = t.last - t.first + 1;
        bt.rho = data_[static_cast<size_t>(g.state)].window_operator(t.first, t.last);
        for (int o : t.ops) {
          std::vector<int> pos;
          for (int q : cs.ops[static_cast<size_t>(o)].sites()) pos.push_back(q - t.first);
          bt.layouts.emplace_back(w, pos);
        }
        for (int q : g.support) bt.support_pos.push_back(q - t.first);
        bg.terms.push_back(std::move(bt));
      }
      bound_.push_back(std::move(bg));
    }
  }

  const ConstraintSet& constraints() const { return *cs_; }
  const std::vector<ExpectationTable>& data() const { return data_; }

  CostEvaluation evaluate(const std::vector<double>& theta, bool with_gradient) const {
    const auto& cs = *cs_;
    std::vector<Matrix> op_values(cs.ops.size());
    for (size_t o = 0; o < cs.ops.size(); ++o) op_values[o] = cs.ops[o].value(theta);
    std::vector<Matrix> op_seeds;
    if (with_gradient) {
      op_seeds.resize(cs.ops.size());
      for (size_t o = 0; o < cs.ops.size(); ++o) op_seeds[o] = Matrix::Zero(op_values[o].rows(), op_values[o].cols());
    }
    CostEvaluation out;
    out.residuals.reserve(cs.num_observables());
    for (size_t gi = 0; gi < cs.groups.size(); ++gi) {
      const auto& g = cs.groups[gi];
      const auto& bg = bound_[gi];
      std::vector<double> r(g.words.size());
      for (size_t a = 0; a < r.size(); ++a) r[a] = -bg.measured[a];
      std::vector<std::vector<Matrix>> states(g.terms.size());
      for (size_t ti = 0; ti < g.terms.size(); ++ti) {
        const auto& t = g.terms[ti];
        const auto& bt = bg.terms[ti];
        auto& xs = states[ti];
        xs.push_back(bt.rho);
        for (size_t j = 0; j < t.ops.size(); ++j)
          xs.push_back(bt.layouts[j].apply(op_values[static_cast<size_t>(t.ops[j])], xs.back()));
        const Matrix reduced = partial_trace(xs.back(), t.last - t.first + 1, bt.support_pos);
        for (size_t a = 0; a < r.size(); ++a) r[a] += t.coef * pauli_word_trace(g.words[a], reduced).real();
        if (!with_gradient) xs.clear();
      }
      for (double v : r) {
        out.total += v * v;
        out.residuals.push_back(v);
      }
      if (!with_gradient) continue;
      Matrix seed_s = Matrix::Zero(bg.word_matrices[0].rows(), bg.word_matrices[0].cols());
      for (size_t a = 0; a < r.size(); ++a) seed_s += (2.0 * r[a]) * bg.word_matrices[a];
      for (size_t ti = 0; ti < g.terms.size(); ++ti) {
        const auto& t = g.terms[ti];
        const auto& bt = bg.terms[ti];
        const auto& xs = states[ti];
        Matrix xbar = t.coef * embed_operator(seed_s, g.support, t.first, t.last);
        for (size_t j = t.ops.size(); j-- > 0;) {
          const auto& layout = bt.layouts[j];
          const Matrix ubar = layout.unfold(xbar);
          const auto o = static_cast<size_t>(t.ops[j]);
          op_seeds[o] += ubar * layout.unfold(xs[j]).adjoint();
          if (j > 0) xbar = layout.fold(op_values[o].adjoint() * ubar);
        }
      }
    }
    if (with_gradient) {
      out.gradient.assign(theta.size(), 0.0);
      for (size_t o = 0; o < cs.ops.size(); ++o) cs.ops[o].backward(theta, op_seeds[o], out.gradient);
    }
    return out;
  }

  double total_cost(const ThetaVector& th) const { return evaluate(th.values(), false).total; }

  /// Phi_q: mean squared residual over observables whose light cone contains q.
  double local_cost(int q, const std::vector<double>& residuals) const {
    const auto& cs = *cs_;
    double sum = 0;
    size_t count = 0, idx = 0;
    for (const auto& g : cs.groups) {
      const bool in = q >= g.cone_first && q <= g.cone_last;
      for (size_t a = 0; a < g.words.size(); ++a, ++idx)
        if (in) {
          sum += residuals[idx] * residuals[idx];
          ++count;
        }
    }
    if (count == 0) throw UndefinedQubit("local_cost: no constraint touches qubit " + std::to_string(q));
    return sum / static_cast<double>(count);
  }

  double local_cost(int q, const ThetaVector& th) const { return local_cost(q, evaluate(th.values(), false).residuals); }

  /// Explicit Pauli expansion of residual `index`: r = sum_P c_P <P>, the
  /// identity coefficient included. Built by applying the adjoint chains to A.
  std::vector<std::pair<PauliString, double>> residual_expansion(size_t index, const std::vector<double>& theta) const {
    const auto& cs = *cs_;
    size_t gi = 0, a = index;
    while (gi < cs.groups.size() && a >= cs.groups[gi].words.size()) a -= cs.groups[gi++].words.size();
    if (gi == cs.groups.size()) throw std::invalid_argument("residual_expansion: index out of range");
    const auto& g = cs.groups[gi];
    std::map<PauliString, double> coeffs;
    for (size_t ti = 0; ti < g.terms.size(); ++ti) {
      const auto& t = g.terms[ti];
      const auto& bt = bound_[gi].terms[ti];
      Matrix x = embed_operator(pauli_word_matrix(g.words[a]), g.support, t.first, t.last);
      for (size_t j = t.ops.size(); j-- > 0;)
        x = bt.layouts[j].apply(cs.ops[static_cast<size_t>(t.ops[j])].value(theta).adjoint(), x);
      for (const auto& [p, c] : pauli_expand(LocalOperator{site_range(t.first, t.last), x}, cs.n, 1e-9))
        coeffs[p] += t.coef * c;
    }
    coeffs[PauliString::on_window(cs.n, g.support.front(), g.words[a])] -= 1.0;
    return {coeffs.begin(), coeffs.end()};
  }

  /// Residual evaluated through residual_expansion and direct table lookups.
  double residual_from_expansion(size_t index, const std::vector<double>& theta) const {
    const auto& cs = *cs_;
    size_t gi = 0, a = index;
    while (gi < cs.groups.size() && a >= cs.groups[gi].words.size()) a -= cs.groups[gi++].words.size();
    const auto& table = data_[static_cast<size_t>(cs.groups[gi].state)];
    double r = 0;
    for (const auto& [p, c] : residual_expansion(index, theta))
      if (c != 0.0) r += c * table.value(p);
    return r;
  }

 private:
  struct BoundTerm {
    Matrix rho;
    std::vector<SiteLayout> layouts;
    std::vector<int> support_pos;
  };

  struct BoundGroup {
    std::vector<double> measured;
    std::vector<Matrix> word_matrices;
    std::vector<BoundTerm> terms;
  };

  const ConstraintSet* cs_;
  std::vector<ExpectationTable> data_;
  std::vector<BoundGroup> bound_;
};

/// Gradient of the total cost with respect to the free entries of theta.
/// Fixed entries read 0; with zero_outward, entries sitting on a bound whose
/// descent direction points out of the box are also set to 0.
inline std::vector<double> gradient(const QuadraticCost& cost, const ThetaVector& th, bool zero_outward = true) {
  std::vector<double> g = cost.evaluate(th.values(), true).gradient;
  for (int i = 0; i < th.size(); ++i) {
    auto& gi = g[static_cast<size_t>(i)];
    if (!th.is_free(i)) {
      gi = 0.0;
      continue;
    }
    if (!zero_outward) continue;
    if (th[i] <= th.lower(i) && gi > 0) gi = 0.0;
    if (th[i] >= th.upper(i) && gi < 0) gi = 0.0;
  }
  return g;
}

}  // namespace sslearn
