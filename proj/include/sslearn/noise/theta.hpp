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
#include <array>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sslearn/noise/lindblad.hpp"

namespace sslearn {

/// Which entries of a ThetaVector are learnable.
enum class NoiseFamily {
  /// z-dephasing, amplitude damping and RESET per qubit.
  stochastic,
  /// x/y/z dephasing, generalized amplitude damping and RESET per qubit.
  deterministic,
  /// deterministic plus the coherent CX triples.
  characterization,
  /// everything fixed at its ideal value.
  noiseless,
};

inline const char* family_name(NoiseFamily f) {
  switch (f) {
    case NoiseFamily::stochastic: return "stochastic";
    case NoiseFamily::deterministic: return "deterministic";
    case NoiseFamily::characterization: return "characterization";
    case NoiseFamily::noiseless: return "noiseless";
  }
  return "?";
}

inline NoiseFamily family_from_name(const std::string& s) {
  for (auto f : {NoiseFamily::stochastic, NoiseFamily::deterministic, NoiseFamily::characterization,
                 NoiseFamily::noiseless})
    if (s == family_name(f)) return f;
  throw std::invalid_argument("unknown noise family: " + s);
}

inline constexpr double kStrengthLower = 1e-5;
inline constexpr double kStrengthUpper = 0.1;
inline constexpr double kExcitedLower = 0.0;
inline constexpr double kExcitedUpper = 0.5;
inline constexpr double kResetLower = 0.5;
inline constexpr double kResetUpper = 0.99;
inline constexpr double kCxLower = 0.5;
inline constexpr double kCxUpper = 1.5;

/// Flat vector of all noise and gate parameters on an n-qubit line.
///
/// Per qubit q the entries are x, y, z, amp, ex, theta0, theta1; then each
/// directed nearest-neighbour pair (0->1, 1->0, 1->2, ...) carries the CX
/// triple theta1, theta2, theta3. Entries outside the learnable mask keep
/// their value and are excluded from gradients.
class ThetaVector {
 public:
  static constexpr int kPerQubit = 7;
  enum Slot { kX = 0, kY, kZ, kAmp, kEx, kReset0, kReset1 };

  ThetaVector() = default;

  /// Builds the vector for a family with the default starting point:
  /// strengths 0.03, RESET 0.95, CX 1.0. Fixed strengths are 0.
  ThetaVector(int n, NoiseFamily family) : n_(n), family_(family) {
    if (n < 2) throw std::invalid_argument("ThetaVector: need at least two qubits");
    const int total = kPerQubit * n + 3 * 2 * (n - 1);
    values_.assign(static_cast<size_t>(total), 0.0);
    lower_.assign(static_cast<size_t>(total), 0.0);
    upper_.assign(static_cast<size_t>(total), 0.0);
    free_.assign(static_cast<size_t>(total), false);
    names_.resize(static_cast<size_t>(total));
    static const char* slot_names[kPerQubit] = {"x", "y", "z", "amp", "ex", "theta0", "theta1"};
    for (int q = 0; q < n; ++q)
      for (int s = 0; s < kPerQubit; ++s) {
        const int i = qubit_index(q, static_cast<Slot>(s));
        names_[static_cast<size_t>(i)] = "q" + std::to_string(q) + "." + slot_names[s];
        if (s == kEx) {
          lower_[static_cast<size_t>(i)] = kExcitedLower;
          upper_[static_cast<size_t>(i)] = kExcitedUpper;
        } else if (s >= kReset0) {
          lower_[static_cast<size_t>(i)] = kResetLower;
          upper_[static_cast<size_t>(i)] = kResetUpper;
        } else {
          lower_[static_cast<size_t>(i)] = kStrengthLower;
          upper_[static_cast<size_t>(i)] = kStrengthUpper;
        }
      }
    for (int q = 0; q + 1 < n; ++q)
      for (auto [c, t] : {std::pair{q, q + 1}, std::pair{q + 1, q}})
        for (int m = 1; m <= 3; ++m) {
          const int i = cx_index(c, t, m);
          names_[static_cast<size_t>(i)] = "cx" + std::to_string(c) + "-" + std::to_string(t) + ".theta" +
                                           std::to_string(m);
          lower_[static_cast<size_t>(i)] = kCxLower;
          upper_[static_cast<size_t>(i)] = kCxUpper;
        }
    for (size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = static_cast<int>(i);
    apply_family_defaults();
  }

  int n() const { return n_; }
  NoiseFamily family() const { return family_; }
  int size() const { return static_cast<int>(values_.size()); }

  int qubit_index(int q, Slot s) const {
    if (q < 0 || q >= n_) throw std::invalid_argument("ThetaVector: qubit out of range");
    return kPerQubit * q + static_cast<int>(s);
  }

  /// Index of CX(control -> target) parameter m in {1, 2, 3}.
  int cx_index(int control, int target, int m) const {
    if (std::abs(control - target) != 1 || std::min(control, target) < 0 || std::max(control, target) >= n_)
      throw std::invalid_argument("ThetaVector: CX pair must be adjacent and in range");
    if (m < 1 || m > 3) throw std::invalid_argument("ThetaVector: CX parameter index must be 1..3");
    const int pair = std::min(control, target);
    const int dir = control < target ? 0 : 1;
    return kPerQubit * n_ + 6 * pair + 3 * dir + (m - 1);
  }

  int index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("ThetaVector: unknown parameter " + name);
    return it->second;
  }

  const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
  double operator[](int i) const { return values_.at(static_cast<size_t>(i)); }
  double lower(int i) const { return lower_.at(static_cast<size_t>(i)); }
  double upper(int i) const { return upper_.at(static_cast<size_t>(i)); }
  bool is_free(int i) const { return free_.at(static_cast<size_t>(i)); }
  const std::vector<double>& values() const { return values_; }

  void set(int i, double v) { values_.at(static_cast<size_t>(i)) = v; }
  void set(const std::string& name, double v) { set(index(name), v); }
  void set_free(int i, bool f) { free_.at(static_cast<size_t>(i)) = f; }

  void set_values(const std::vector<double>& v) {
    if (v.size() != values_.size()) throw std::invalid_argument("ThetaVector: size mismatch");
    values_ = v;
  }

  NoiseStrengths strengths(int q) const {
    return NoiseStrengths{values_[static_cast<size_t>(qubit_index(q, kX))],
                          values_[static_cast<size_t>(qubit_index(q, kY))],
                          values_[static_cast<size_t>(qubit_index(q, kZ))],
                          values_[static_cast<size_t>(qubit_index(q, kAmp))],
                          values_[static_cast<size_t>(qubit_index(q, kEx))]};
  }

  void set_strengths(int q, const NoiseStrengths& s) {
    set(qubit_index(q, kX), s.x);
    set(qubit_index(q, kY), s.y);
    set(qubit_index(q, kZ), s.z);
    set(qubit_index(q, kAmp), s.amp);
    set(qubit_index(q, kEx), s.ex);
  }

  std::pair<double, double> reset(int q) const {
    return {values_[static_cast<size_t>(qubit_index(q, kReset0))],
            values_[static_cast<size_t>(qubit_index(q, kReset1))]};
  }

  void set_reset(int q, double theta0, double theta1) {
    set(qubit_index(q, kReset0), theta0);
    set(qubit_index(q, kReset1), theta1);
  }

  std::array<double, 3> cx(int control, int target) const {
    return {values_[static_cast<size_t>(cx_index(control, target, 1))],
            values_[static_cast<size_t>(cx_index(control, target, 2))],
            values_[static_cast<size_t>(cx_index(control, target, 3))]};
  }

  void set_cx(int control, int target, const std::array<double, 3>& t) {
    for (int m = 1; m <= 3; ++m) set(cx_index(control, target, m), t[static_cast<size_t>(m - 1)]);
  }

  /// Marks the RESET pair of qubit q as unused (fixed), e.g. when no RESET
  /// acts on it.
  void fix_reset(int q) {
    set_free(qubit_index(q, kReset0), false);
    set_free(qubit_index(q, kReset1), false);
  }

  /// Copies every value into the box [lower, upper] for the free entries.
  void clamp() {
    for (size_t i = 0; i < values_.size(); ++i)
      if (free_[i]) values_[i] = std::clamp(values_[i], lower_[i], upper_[i]);
  }

  /// Throws if a free entry lies outside its bounds.
  void check_bounds(double slack = 1e-12) const {
    for (size_t i = 0; i < values_.size(); ++i)
      if (free_[i] && (values_[i] < lower_[i] - slack || values_[i] > upper_[i] + slack))
        throw std::invalid_argument("ThetaVector: " + names_[i] + " outside bounds");
  }

  std::vector<int> free_indices() const {
    std::vector<int> out;
    for (size_t i = 0; i < free_.size(); ++i)
      if (free_[i]) out.push_back(static_cast<int>(i));
    return out;
  }

  /// Same values with the learnable mask of another family.
  ThetaVector with_family(NoiseFamily family) const {
    ThetaVector out(n_, family);
    out.values_ = values_;
    return out;
  }

 private:
  void apply_family_defaults() {
    const bool xy = family_ == NoiseFamily::deterministic || family_ == NoiseFamily::characterization;
    const bool learn = family_ != NoiseFamily::noiseless;
    for (int q = 0; q < n_; ++q) {
      auto init = [&](Slot s, bool active, double v) {
        const int i = qubit_index(q, s);
        free_[static_cast<size_t>(i)] = active && learn;
        values_[static_cast<size_t>(i)] = (active && learn) ? v : 0.0;
      };
      init(kX, xy, 0.03);
      init(kY, xy, 0.03);
      init(kZ, true, 0.03);
      init(kAmp, true, 0.03);
      init(kEx, xy, 0.03);
      for (Slot s : {kReset0, kReset1}) {
        const int i = qubit_index(q, s);
        free_[static_cast<size_t>(i)] = learn;
        values_[static_cast<size_t>(i)] = learn ? 0.95 : 1.0;
      }
    }
    for (int q = 0; q + 1 < n_; ++q)
      for (auto [c, t] : {std::pair{q, q + 1}, std::pair{q + 1, q}})
        for (int m = 1; m <= 3; ++m) {
          const int i = cx_index(c, t, m);
          values_[static_cast<size_t>(i)] = 1.0;
          free_[static_cast<size_t>(i)] = family_ == NoiseFamily::characterization;
        }
  }

  int n_ = 0;
  NoiseFamily family_ = NoiseFamily::noiseless;
  std::vector<double> values_, lower_, upper_;
  std::vector<bool> free_;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

/// Draws generating parameters: stochastic family strengths in [0.01, 0.07],
/// deterministic family strengths (x, y, z, amp, ex) in [0.01, 0.1], RESET
/// pairs in [0.87, 0.98] with theta0 >= theta1. CX triples stay ideal.
inline ThetaVector random_truth(int n, NoiseFamily family, std::mt19937_64& rng) {
  ThetaVector th(n, family);
  const bool stochastic = family == NoiseFamily::stochastic;
  std::uniform_real_distribution<double> strength(0.01, stochastic ? 0.07 : 0.1);
  std::uniform_real_distribution<double> reset(0.87, 0.98);
  for (int q = 0; q < n; ++q) {
    NoiseStrengths s;
    if (stochastic) {
      s.z = strength(rng);
      s.amp = strength(rng);
    } else {
      s.x = strength(rng);
      s.y = strength(rng);
      s.z = strength(rng);
      s.amp = strength(rng);
      s.ex = strength(rng);
    }
    th.set_strengths(q, s);
    double a = reset(rng), b = reset(rng);
    if (a < b) std::swap(a, b);
    th.set_reset(q, a, b);
  }
  return th;
}

/// Gate durations in seconds and the global time scale T0.
struct GateTiming {
  double t0 = 0.0;
  double sqrt_x = 15e-9;
  double hadamard = 20e-9;
  std::vector<double> reset;
  /// CX durations per directed pair, ordered 0->1, 1->0, 1->2, 2->1, ...
  std::vector<double> cx;

  double rotation() const { return 2.0 * sqrt_x; }

  double cx_time(int control, int target) const {
    const int pair = std::min(control, target);
    return cx.at(static_cast<size_t>(2 * pair + (control < target ? 0 : 1)));
  }

  double rescx_time(int control, int target) const { return reset.at(static_cast<size_t>(target)) + cx_time(control, target); }

  /// Running time of the RESU gate on (k, k+1).
  double resu_time(int k) const {
    return 2.0 * rotation() + cx_time(k, k + 1) + reset.at(static_cast<size_t>(k)) + cx_time(k + 1, k);
  }

  void validate(int n) const {
    if (static_cast<int>(reset.size()) != n || static_cast<int>(cx.size()) != 2 * (n - 1))
      throw std::invalid_argument("GateTiming: duration tables do not match qubit count");
    if (!(t0 > 0)) throw std::invalid_argument("GateTiming: T0 must be positive");
  }
};

/// RESET durations in [0.8, 1.1] us per qubit, CX in [0.3, 0.45] us per directed pair.
inline GateTiming random_timing(int n, std::mt19937_64& rng) {
  GateTiming t;
  std::uniform_real_distribution<double> reset(0.8e-6, 1.1e-6);
  std::uniform_real_distribution<double> cx(0.3e-6, 0.45e-6);
  for (int q = 0; q < n; ++q) t.reset.push_back(reset(rng));
  for (int k = 0; k < 2 * (n - 1); ++k) t.cx.push_back(cx(rng));
  return t;
}

}  // namespace sslearn
