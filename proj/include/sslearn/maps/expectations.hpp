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
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sslearn/errors.hpp"
#include "sslearn/maps/steady_state.hpp"
#include "sslearn/pauli.hpp"
#include "sslearn/state.hpp"

namespace sslearn {

struct ExpectationEntry {
  double value = 0.0;
  /// Number of shots behind the value; 0 marks an exact value.
  long long shots = 0;
};

/// Pauli expectation values of one state, keyed by full-length labels.
struct ExpectationTable {
  int n = 0;
  std::map<PauliString, ExpectationEntry> entries;
  /// "exact" or "noisy".
  std::string provenance = "exact";
  uint64_t seed = 0;
  /// Free-form "key: value" lines written into the file header.
  std::vector<std::string> metadata;

  bool contains(const PauliString& p) const { return p.is_identity() || entries.count(p) > 0; }

  double value(const PauliString& p) const {
    if (p.is_identity()) return 1.0;
    auto it = entries.find(p);
    if (it == entries.end()) throw MissingData(p.label());
    return it->second.value;
  }

  /// Operator sum_P <P> P / 2^w over every Pauli word on sites first..last.
  /// Equals the reduced state there when the values are exact.
  Matrix window_operator(int first, int last) const {
    const int w = last - first + 1;
    if (first < 0 || last >= n || w < 1 || w > kMaxLocalSites)
      throw UnsupportedSupport("ExpectationTable::window_operator: bad window");
    const Eigen::Index d = Eigen::Index{1} << w;
    Matrix out = Matrix::Zero(d, d);
    const double norm = std::ldexp(1.0, -w);
    for (const auto& word : all_pauli_words(w)) {
      const double v = value(PauliString::on_window(n, first, word));
      if (v == 0.0) continue;
      const PauliMask m = PauliMask::from_letters(word);
      for (uint32_t j = 0; j < static_cast<uint32_t>(d); ++j) out(j ^ m.x, j) += v * norm * m.element(j);
    }
    return out;
  }

  void write(std::ostream& os) const {
    os << "# sslearn expectation table\n";
    os << "# n: " << n << "\n";
    os << "# provenance: " << provenance << "\n";
    os << "# seed: " << seed << "\n";
    for (const auto& m : metadata) os << "# " << m << "\n";
    os << "pauli,value,shots\n";
    char buf[64];
    for (const auto& [p, e] : entries) {
      std::snprintf(buf, sizeof(buf), "%.17g", e.value);
      os << p.label() << ',' << buf << ',' << e.shots << '\n';
    }
  }

  void save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    write(f);
  }

  static ExpectationTable read(std::istream& is) {
    ExpectationTable t;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        const std::string body = line.substr(std::min<size_t>(2, line.size()));
        if (body.rfind("n: ", 0) == 0) t.n = std::stoi(body.substr(3));
        else if (body.rfind("provenance: ", 0) == 0) t.provenance = body.substr(12);
        else if (body.rfind("seed: ", 0) == 0) t.seed = std::stoull(body.substr(6));
        else if (body.rfind("sslearn", 0) != 0) t.metadata.push_back(body);
        continue;
      }
      if (!header_seen) {
        header_seen = true;
        continue;
      }
      std::stringstream ss(line);
      std::string label, value, shots;
      std::getline(ss, label, ',');
      std::getline(ss, value, ',');
      std::getline(ss, shots, ',');
      const PauliString p = PauliString::from_label(label);
      if (t.n == 0) t.n = p.n();
      if (p.n() != t.n) throw std::invalid_argument("ExpectationTable: inconsistent label length");
      t.entries[p] = ExpectationEntry{std::stod(value), std::stoll(shots)};
    }
    return t;
  }

  static ExpectationTable load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    return read(f);
  }
};

/// Exact expectation values Tr(rho P), computed from reduced states of each window.
inline ExpectationTable measure_paulis(const DensityMatrix& rho, const std::vector<PauliString>& paulis) {
  ExpectationTable t;
  t.n = rho.n;
  std::map<std::pair<int, int>, Matrix> rdms;
  for (const auto& p : paulis) {
    if (p.n() != rho.n) throw std::invalid_argument("measure_paulis: qubit count mismatch");
    if (p.is_identity()) continue;
    const auto win = p.window();
    auto it = rdms.find(win);
    if (it == rdms.end()) it = rdms.emplace(win, partial_trace(rho.data, rho.n, site_range(win.first, win.second))).first;
    const double v = pauli_word_trace(p.letters_on(win.first, win.second), it->second).real();
    t.entries[p] = ExpectationEntry{std::clamp(v, -1.0, 1.0), 0};
  }
  return t;
}

inline ExpectationTable measure_paulis(const SteadyState& ss, const std::vector<PauliString>& paulis) {
  return measure_paulis(ss.rho, paulis);
}

/// Adds independent Gaussian shot noise with sigma = sqrt((1 - <A>^2) / N) to
/// each entry, in label order, and clamps to [-1, 1].
inline ExpectationTable inject_shot_noise(const ExpectationTable& table, long long shots, uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("inject_shot_noise: shots must be positive");
  ExpectationTable out = table;
  out.provenance = "noisy";
  out.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& [p, e] : out.entries) {
    const double sigma = std::sqrt(std::max(0.0, 1.0 - e.value * e.value) / static_cast<double>(shots));
    const double draw = normal(rng);
    e.value = std::clamp(e.value + sigma * draw, -1.0, 1.0);
    e.shots = shots;
  }
  return out;
}

}  // namespace sslearn
