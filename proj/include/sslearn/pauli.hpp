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
#include <bit>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sslearn/errors.hpp"
#include "sslearn/linalg.hpp"

namespace sslearn {

/// Maximum number of sites a LocalOperator or LocalChannel may span.
inline constexpr int kMaxLocalSites = 4;

/// A tensor product of single-qubit Paulis on an n-qubit line.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(int n) : letters_(static_cast<size_t>(n), 'I') {
    if (n < 1) throw std::invalid_argument("PauliString: n must be positive");
  }

  /// Parses a label such as "IXZI"; lower case is accepted.
  static PauliString from_label(const std::string& label) {
    PauliString p(static_cast<int>(label.size()));
    for (size_t i = 0; i < label.size(); ++i) p.set(static_cast<int>(i), label[i]);
    return p;
  }

  /// Builds a string on n qubits with `letters` placed starting at `first`.
  static PauliString on_window(int n, int first, const std::string& letters) {
    if (first < 0 || first + static_cast<int>(letters.size()) > n)
      throw std::invalid_argument("PauliString::on_window: window outside system");
    PauliString p(n);
    for (size_t i = 0; i < letters.size(); ++i) p.set(first + static_cast<int>(i), letters[i]);
    return p;
  }

  int n() const { return static_cast<int>(letters_.size()); }
  char letter(int site) const { return letters_.at(static_cast<size_t>(site)); }
  const std::string& label() const { return letters_; }

  void set(int site, char c) {
    if (site < 0 || site >= n()) throw std::invalid_argument("PauliString: site out of range");
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument(std::string("PauliString: bad letter ") + c);
    letters_[static_cast<size_t>(site)] = c;
  }

  bool is_identity() const {
    return std::all_of(letters_.begin(), letters_.end(), [](char c) { return c == 'I'; });
  }

  std::vector<int> support() const {
    std::vector<int> s;
    for (int i = 0; i < n(); ++i)
      if (letters_[static_cast<size_t>(i)] != 'I') s.push_back(i);
    return s;
  }

  /// First and last non-identity site; (-1, -1) for the identity string.
  std::pair<int, int> window() const {
    auto s = support();
    if (s.empty()) return {-1, -1};
    return {s.front(), s.back()};
  }

  int span() const {
    auto [a, b] = window();
    return a < 0 ? 0 : b - a + 1;
  }

  /// Letters restricted to sites first..last.
  std::string letters_on(int first, int last) const {
    return letters_.substr(static_cast<size_t>(first), static_cast<size_t>(last - first + 1));
  }

  friend bool operator==(const PauliString& a, const PauliString& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const PauliString& a, const PauliString& b) { return !(a == b); }
  friend bool operator<(const PauliString& a, const PauliString& b) { return a.letters_ < b.letters_; }

 private:
  std::string letters_;
};

/// An operator on a contiguous run of at most four sites.
struct LocalOperator {
  std::vector<int> sites;
  Matrix data;

  void validate() const {
    if (sites.empty() || static_cast<int>(sites.size()) > kMaxLocalSites)
      throw UnsupportedSupport("LocalOperator: support must cover 1 to 4 sites");
    for (size_t i = 1; i < sites.size(); ++i)
      if (sites[i] != sites[i - 1] + 1)
        throw std::invalid_argument("LocalOperator: sites must be contiguous and increasing");
    const Eigen::Index d = Eigen::Index{1} << sites.size();
    if (data.rows() != d || data.cols() != d)
      throw std::invalid_argument("LocalOperator: matrix dimension does not match sites");
  }
};

inline std::vector<int> site_range(int first, int last) {
  std::vector<int> s;
  for (int i = first; i <= last; ++i) s.push_back(i);
  return s;
}

/// Bit-mask form of a Pauli word on k qubits: P|j> = phase(j) |j ^ x>.
/// Position 0 of the word is the most significant bit.
struct PauliMask {
  uint32_t x = 0;
  uint32_t z = 0;
  int ny = 0;

  static PauliMask from_letters(const std::string& w) {
    PauliMask m;
    const int k = static_cast<int>(w.size());
    for (int p = 0; p < k; ++p) {
      const uint32_t bit = 1u << (k - 1 - p);
      switch (w[static_cast<size_t>(p)]) {
        case 'X': m.x |= bit; break;
        case 'Y': m.x |= bit; m.z |= bit; ++m.ny; break;
        case 'Z': m.z |= bit; break;
        default: break;
      }
    }
    return m;
  }

  /// Matrix element <j ^ x| P |j>.
  cplx element(uint32_t j) const {
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx ph = ipow[ny & 3];
    return (std::popcount(j & z) & 1) ? -ph : ph;
  }
};

inline Matrix pauli_word_matrix(const std::string& w) {
  const PauliMask m = PauliMask::from_letters(w);
  const Eigen::Index d = Eigen::Index{1} << w.size();
  Matrix out = Matrix::Zero(d, d);
  for (uint32_t j = 0; j < static_cast<uint32_t>(d); ++j) out(j ^ m.x, j) = m.element(j);
  return out;
}

/// Tr(P M) for a Pauli word P and a matrix M of matching dimension.
inline cplx pauli_word_trace(const std::string& w, const Matrix& m) {
  const PauliMask pm = PauliMask::from_letters(w);
  cplx acc = 0.0;
  const auto d = static_cast<uint32_t>(m.rows());
  for (uint32_t j = 0; j < d; ++j) acc += pm.element(j) * m(j, j ^ pm.x);
  return acc;
}

/// All 4^k words over {I,X,Y,Z} in lexicographic order (I < X < Y < Z).
inline std::vector<std::string> all_pauli_words(int k) {
  static const char alphabet[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<std::string> out;
  const size_t total = size_t{1} << (2 * k);
  out.reserve(total);
  for (size_t idx = 0; idx < total; ++idx) {
    std::string w(static_cast<size_t>(k), 'I');
    size_t r = idx;
    for (int p = k - 1; p >= 0; --p) {
      w[static_cast<size_t>(p)] = alphabet[r & 3];
      r >>= 2;
    }
    out.push_back(std::move(w));
  }
  return out;
}

/// Matrix of p restricted to its window. The identity string maps to the
/// single-site identity on site 0.
inline LocalOperator pauli_matrix(const PauliString& p) {
  auto [a, b] = p.window();
  if (a < 0) return LocalOperator{{0}, Matrix::Identity(2, 2)};
  if (b - a + 1 > kMaxLocalSites) throw UnsupportedSupport("pauli_matrix: window wider than 4 sites");
  return LocalOperator{site_range(a, b), pauli_word_matrix(p.letters_on(a, b))};
}

/// Strings with non-identity letters on every site of a contiguous window of
/// length 1..t, ordered by length, then window start, then letters.
inline std::vector<PauliString> enumerate_local_paulis(int n, int t) {
  if (t < 1 || n < 1) throw std::invalid_argument("enumerate_local_paulis: need 1 <= t <= n");
  if (t > n) throw std::invalid_argument("enumerate_local_paulis: t exceeds n");
  std::vector<PauliString> out;
  for (int k = 1; k <= t; ++k) {
    std::vector<std::string> words;
    for (const auto& w : all_pauli_words(k))
      if (w.find('I') == std::string::npos) words.push_back(w);
    for (int s = 0; s + k <= n; ++s)
      for (const auto& w : words) out.push_back(PauliString::on_window(n, s, w));
  }
  return out;
}

/// Number of strings returned by enumerate_local_paulis.
inline long long local_pauli_count(int n, int t) {
  long long total = 0, pow3 = 1;
  for (int k = 1; k <= t; ++k) {
    pow3 *= 3;
    total += pow3 * (n - k + 1);
  }
  return total;
}

/// Every non-identity string whose support spans at most t contiguous sites,
/// interior identities included. This is the data set needed to rebuild any
/// t-site reduced state.
inline std::vector<PauliString> enumerate_span_paulis(int n, int t) {
  if (t < 1 || n < 1) throw std::invalid_argument("enumerate_span_paulis: need t >= 1");
  t = std::min(t, n);
  std::vector<PauliString> out;
  for (int k = 1; k <= t; ++k) {
    for (const auto& w : all_pauli_words(k)) {
      if (w.front() == 'I' || w.back() == 'I') continue;
      for (int s = 0; s + k <= n; ++s) out.push_back(PauliString::on_window(n, s, w));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Coefficients c = Tr(P A) / 2^k of a Hermitian local operator in the Pauli
/// basis, expressed as strings on n qubits. Includes zero coefficients.
inline std::vector<std::pair<PauliString, double>> pauli_expand(const LocalOperator& a, int n,
                                                                double tol = 1e-10) {
  a.validate();
  if (a.sites.back() >= n) throw std::invalid_argument("pauli_expand: sites outside system");
  if (!is_hermitian(a.data, tol)) throw std::invalid_argument("pauli_expand: operator is not Hermitian");
  const int k = static_cast<int>(a.sites.size());
  const double norm = std::ldexp(1.0, -k);
  std::vector<std::pair<PauliString, double>> out;
  for (const auto& w : all_pauli_words(k)) {
    const cplx c = pauli_word_trace(w, a.data) * norm;
    if (std::abs(c.imag()) > tol) throw std::invalid_argument("pauli_expand: complex Pauli coefficient");
    out.emplace_back(PauliString::on_window(n, a.sites.front(), w), c.real());
  }
  return out;
}

}  // namespace sslearn
