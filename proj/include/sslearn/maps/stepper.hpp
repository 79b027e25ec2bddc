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
#include <stdexcept>
#include <utility>
#include <vector>

#include "sslearn/linalg.hpp"
#include "sslearn/state.hpp"

namespace sslearn {

/// One application of a map to a full n-qubit operator.
class MapStepper {
 public:
  virtual ~MapStepper() = default;
  virtual int n() const = 0;
  virtual Matrix apply(const Matrix& x) const = 0;

  DensityMatrix step(const DensityMatrix& rho) const { return DensityMatrix{rho.n, apply(rho.data)}; }
};

/// A local superoperator with its site layout, ready to act on n-qubit operators.
struct SitedSuperOp {
  SiteLayout layout;
  Matrix liouville;

  SitedSuperOp(int n, std::vector<int> sites, Matrix s) : layout(n, std::move(sites)), liouville(std::move(s)) {}

  Matrix apply(const Matrix& x) const { return layout.apply(liouville, x); }
};

/// rho -> sum_k p_k E_k(rho) for strictly local channels E_k.
class ChannelMixtureStepper : public MapStepper {
 public:
  ChannelMixtureStepper(int n, std::vector<std::pair<double, LocalChannel>> terms) : n_(n) {
    double sum = 0;
    for (auto& [p, ch] : terms) {
      sum += p;
      ops_.emplace_back(p, SitedSuperOp(n, ch.sites, ch.liouville));
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("ChannelMixtureStepper: probabilities must sum to 1");
  }

  int n() const override { return n_; }

  Matrix apply(const Matrix& x) const override {
    Matrix acc = Matrix::Zero(x.rows(), x.cols());
    for (const auto& [p, op] : ops_) acc += p * op.apply(x);
    return acc;
  }

 private:
  int n_;
  std::vector<std::pair<double, SitedSuperOp>> ops_;
};

/// Applies a fixed sequence of local channels, first element first.
class ChannelSequenceStepper : public MapStepper {
 public:
  ChannelSequenceStepper(int n, const std::vector<LocalChannel>& channels) : n_(n) {
    for (const auto& ch : channels) ops_.emplace_back(n, ch.sites, ch.liouville);
  }

  int n() const override { return n_; }

  Matrix apply(const Matrix& x) const override {
    Matrix y = x;
    for (const auto& op : ops_) y = op.apply(y);
    return y;
  }

 private:
  int n_;
  std::vector<SitedSuperOp> ops_;
};

}  // namespace sslearn
