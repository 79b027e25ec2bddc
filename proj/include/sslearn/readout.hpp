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

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslearn/errors.hpp"
#include "sslearn/linalg.hpp"

// Readout confusion P(x|y): probability of reading bitstring x when the
// ideal outcome is y. Bitstrings index qubit 0 as the most significant bit.

namespace sslearn {

inline constexpr int kMaxReadoutWindow = 4;

struct ConfusionModel {
  /// Column-stochastic 2x2 matrices, one per qubit of the window.
  std::vector<RealMatrix> per_qubit;
  /// Optional joint 2^k x 2^k matrix; overrides the tensor product when set.
  std::optional<RealMatrix> joint;

  static ConfusionModel identity(int k) {
    ConfusionModel m;
    m.per_qubit.assign(static_cast<size_t>(k), RealMatrix::Identity(2, 2));
    return m;
  }

  /// Independent flips with P(1|0) = e01 and P(0|1) = e10 on every qubit.
  static ConfusionModel symmetric_flips(int k, double e01, double e10) {
    RealMatrix p(2, 2);
    p << 1 - e01, e10, e01, 1 - e10;
    ConfusionModel m;
    m.per_qubit.assign(static_cast<size_t>(k), p);
    return m;
  }

  static ConfusionModel from_joint(RealMatrix p) {
    ConfusionModel m;
    int k = 0;
    while ((Eigen::Index{1} << k) < p.rows()) ++k;
    m.per_qubit.assign(static_cast<size_t>(k), RealMatrix::Identity(2, 2));
    m.joint = std::move(p);
    m.validate();
    return m;
  }

  int k() const { return static_cast<int>(per_qubit.size()); }

  RealMatrix matrix() const {
    if (joint) return *joint;
    RealMatrix out = RealMatrix::Ones(1, 1);
    for (const auto& p : per_qubit) {
      RealMatrix next(out.rows() * 2, out.cols() * 2);
      for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * p;
      out = std::move(next);
    }
    return out;
  }

  void validate() const {
    if (k() < 1 || k() > kMaxReadoutWindow) throw std::invalid_argument("ConfusionModel: window must hold 1..4 qubits");
    auto check = [](const RealMatrix& p, Eigen::Index d) {
      if (p.rows() != d || p.cols() != d) throw std::invalid_argument("ConfusionModel: matrix has wrong size");
      if (p.minCoeff() < 0 || p.maxCoeff() > 1) throw std::invalid_argument("ConfusionModel: entries outside [0, 1]");
      for (Eigen::Index c = 0; c < d; ++c)
        if (std::abs(p.col(c).sum() - 1.0) > 1e-9) throw std::invalid_argument("ConfusionModel: column does not sum to 1");
    };
    for (const auto& p : per_qubit) check(p, 2);
    if (joint) check(*joint, Eigen::Index{1} << k());
  }
};

inline RealVector apply_confusion(const RealVector& dist, const ConfusionModel& model) {
  const RealMatrix p = model.matrix();
  if (dist.size() != p.cols()) throw std::invalid_argument("apply_confusion: dimension mismatch");
  if (std::abs(dist.sum() - 1.0) > 1e-9) throw std::invalid_argument("apply_confusion: distribution does not sum to 1");
  return p * dist;
}

struct MitigationResult {
  RealVector dist;
  double condition_number = 0.0;
  /// Most negative entry before any clipping.
  double min_entry = 0.0;
};

/// Inverts the confusion matrix. Negative entries are kept unless clip is set,
/// in which case they are zeroed and the vector renormalized.
inline MitigationResult mitigate(const RealVector& noisy, const ConfusionModel& model, bool clip = false) {
  const RealMatrix p = model.matrix();
  if (noisy.size() != p.cols()) throw std::invalid_argument("mitigate: dimension mismatch");
  Eigen::JacobiSVD<RealMatrix> svd(p);
  const RealVector sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12)) throw SingularMatrix("mitigate: confusion matrix is singular", cond);
  MitigationResult r;
  r.condition_number = cond;
  r.dist = p.partialPivLu().solve(noisy);
  r.dist /= r.dist.sum();
  r.min_entry = r.dist.minCoeff();
  if (clip && r.min_entry < 0) {
    r.dist = r.dist.cwiseMax(0.0);
    r.dist /= r.dist.sum();
  }
  return r;
}

/// Sign-weighted expectation of a product of measured qubits. mask bit
/// (k-1-i) selects qubit i of the window.
inline double parity_expectation(const RealVector& dist, uint32_t mask) {
  double e = 0;
  for (Eigen::Index x = 0; x < dist.size(); ++x) e += (std::popcount(static_cast<uint32_t>(x) & mask) % 2 ? -1.0 : 1.0) * dist(x);
  return e;
}

/// Mask of the non-identity letters of a window word such as "XIZ".
inline uint32_t letters_mask(const std::string& letters) {
  uint32_t m = 0;
  const int k = static_cast<int>(letters.size());
  for (int i = 0; i < k; ++i)
    if (letters[static_cast<size_t>(i)] != 'I') m |= 1u << (k - 1 - i);
  return m;
}

inline RealVector counts_to_distribution(const std::vector<long long>& counts) {
  RealVector d(static_cast<Eigen::Index>(counts.size()));
  double total = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw std::invalid_argument("counts must be non-negative");
    d(static_cast<Eigen::Index>(i)) = static_cast<double>(counts[i]);
    total += static_cast<double>(counts[i]);
  }
  if (!(total > 0)) throw std::invalid_argument("counts are empty");
  return d / total;
}

/// Expectation of the Pauli word `letters` from counts taken in its
/// measurement basis over the same window, after readout mitigation.
inline double corrected_expectation(const std::string& letters, const std::vector<long long>& counts,
                                    const ConfusionModel& model) {
  if (static_cast<int>(letters.size()) != model.k()) throw std::invalid_argument("corrected_expectation: window mismatch");
  if (counts.size() != (size_t{1} << letters.size())) throw std::invalid_argument("corrected_expectation: wrong count vector size");
  return parity_expectation(mitigate(counts_to_distribution(counts), model).dist, letters_mask(letters));
}

/// Multinomial counts drawn as a chain of conditional binomials.
inline std::vector<long long> sample_counts(const RealVector& dist, long long shots, std::mt19937_64& rng) {
  std::vector<long long> counts(static_cast<size_t>(dist.size()), 0);
  double rest = 0;
  for (Eigen::Index i = 0; i < dist.size(); ++i) rest += std::max(dist(i), 0.0);
  long long left = shots;
  for (Eigen::Index i = 0; i < dist.size() && left > 0; ++i) {
    const double p = std::max(dist(i), 0.0);
    const double q = rest > 0 ? std::min(1.0, p / rest) : 0.0;
    const long long c = i + 1 == dist.size() ? left : std::binomial_distribution<long long>(left, q)(rng);
    counts[static_cast<size_t>(i)] = c;
    left -= c;
    rest -= p;
  }
  return counts;
}

/// Empirical joint confusion matrix from calibration runs: each basis state y
/// is prepared `shots` times and read through `truth`.
inline ConfusionModel estimate_confusion(const ConfusionModel& truth, long long shots, uint64_t seed) {
  const RealMatrix p = truth.matrix();
  std::mt19937_64 rng(seed);
  RealMatrix est(p.rows(), p.cols());
  for (Eigen::Index y = 0; y < p.cols(); ++y) {
    const auto counts = sample_counts(p.col(y), shots, rng);
    for (Eigen::Index x = 0; x < p.rows(); ++x)
      est(x, y) = static_cast<double>(counts[static_cast<size_t>(x)]) / static_cast<double>(shots);
  }
  return ConfusionModel::from_joint(std::move(est));
}

}  // namespace sslearn
