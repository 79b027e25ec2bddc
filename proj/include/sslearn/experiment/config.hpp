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

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sslearn/experiment/presets.hpp"
#include "sslearn/learning/adam.hpp"
#include "sslearn/learning/constraints.hpp"
#include "sslearn/maps/steady_state.hpp"
#include "sslearn/readout.hpp"

namespace sslearn {

using json = nlohmann::json;

struct ReadoutConfig {
  /// Per-qubit column-stochastic 2x2 matrices (row-major in the file).
  std::vector<RealMatrix> per_qubit;
  long long calibration_shots = 200000;
  bool mitigate = true;
};

/// Declarative description of one experiment. See configs/ for examples.
struct ExperimentConfig {
  std::string name = "experiment";
  ConstraintKind kind = ConstraintKind::stochastic;
  /// "set1".."set3", "map-1".."map-3" or "custom".
  std::string preset = "set2";
  std::array<double, 4> probs = presets::kProbabilitySets[1];
  /// Angles of the stochastic rotation gate; drawn from the seed when absent.
  std::optional<RotationAngles> rotation;
  presets::MapAngles angles = presets::kMapAngles[0];
  int n = 6;

  /// "random", "explicit" or "lagos".
  std::string truth_mode = "random";
  std::vector<std::pair<std::string, double>> truth_values;
  /// "random" or "explicit".
  std::string timing_mode = "random";
  std::vector<double> reset_times;
  std::vector<double> cx_times;
  /// Zero means the longest composite gate.
  double t0 = 0.0;

  std::vector<long long> shots = {1000000};
  int realizations = 10;
  uint64_t seed = 1;
  NoiseFamily learn_family = NoiseFamily::stochastic;
  SteadyStateOptions steady;
  AdamConfig adam;
  std::optional<ReadoutConfig> readout;

  /// Cross-check target map and optional learned parameter file.
  std::string crosscheck_target = "map-2";
  std::string crosscheck_theta;

  std::string output_dir = "out";
  json raw;

  std::string hash() const;
  static ExperimentConfig from_json(const json& j);
  static ExperimentConfig load(const std::string& path);
};

/// FNV-1a over the canonical dump; printed as 16 hex digits.
inline std::string hash_json(const json& j) {
  const std::string s = j.dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// The output directory does not enter the hash, so relocated runs compare equal.
inline std::string ExperimentConfig::hash() const {
  json j = raw;
  if (j.is_object()) j.erase("output_dir");
  return hash_json(j);
}

namespace detail {

inline RotationAngles angles3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("config: rotation needs three angles");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline ResuAngles resu_angles(const json& j) { return {angles3(j.at("u1")), angles3(j.at("u2"))}; }

}  // namespace detail

inline ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.raw = j;
  c.name = j.value("name", c.name);
  const json& map = j.at("map");
  const std::string kind = map.at("kind").get<std::string>();
  if (kind == "stochastic") {
    c.kind = ConstraintKind::stochastic;
    c.preset = map.value("preset", std::string("set2"));
    if (c.preset == "custom") {
      const auto p = map.at("probs").get<std::vector<double>>();
      if (p.size() != 4) throw std::invalid_argument("config: probs needs four entries");
      std::copy(p.begin(), p.end(), c.probs.begin());
    } else {
      c.probs = presets::normalized(presets::probability_set(c.preset));
    }
    if (map.contains("rotation")) c.rotation = detail::angles3(map.at("rotation"));
    c.learn_family = NoiseFamily::stochastic;
  } else if (kind == "deterministic") {
    c.kind = ConstraintKind::deterministic;
    c.preset = map.value("preset", std::string("map-1"));
    if (c.preset == "custom") {
      c.angles.even = detail::resu_angles(map.at("even"));
      c.angles.odd = detail::resu_angles(map.at("odd"));
    } else {
      c.angles = presets::map_angles(c.preset);
    }
    c.learn_family = NoiseFamily::deterministic;
  } else {
    throw std::invalid_argument("config: map.kind must be stochastic or deterministic");
  }
  c.n = j.value("n", c.n);

  if (j.contains("truth")) {
    const json& t = j.at("truth");
    c.truth_mode = t.value("mode", c.truth_mode);
    if (c.truth_mode == "explicit")
      for (const auto& [k, v] : t.at("values").items()) c.truth_values.emplace_back(k, v.get<double>());
    else if (c.truth_mode != "random" && c.truth_mode != "lagos")
      throw std::invalid_argument("config: truth.mode must be random, explicit or lagos");
  }
  if (j.contains("timing")) {
    const json& t = j.at("timing");
    c.timing_mode = t.value("mode", c.timing_mode);
    if (c.timing_mode == "explicit") {
      c.reset_times = t.at("reset").get<std::vector<double>>();
      c.cx_times = t.at("cx").get<std::vector<double>>();
    } else if (c.timing_mode != "random") {
      throw std::invalid_argument("config: timing.mode must be random or explicit");
    }
    c.t0 = t.value("t0", 0.0);
  }
  if (j.contains("shots")) {
    const json& s = j.at("shots");
    c.shots = s.is_array() ? s.get<std::vector<long long>>() : std::vector<long long>{s.get<long long>()};
  }
  c.realizations = j.value("realizations", c.realizations);
  c.seed = j.value("seed", c.seed);
  if (j.contains("learn_family")) c.learn_family = family_from_name(j.at("learn_family").get<std::string>());
  if (j.contains("steady_state")) {
    const json& s = j.at("steady_state");
    c.steady.tol = s.value("tol", c.steady.tol);
    c.steady.max_iter = s.value("max_iter", c.steady.max_iter);
    c.steady.fixed_steps = s.value("fixed_steps", c.steady.fixed_steps);
  }
  if (j.contains("adam")) {
    const json& a = j.at("adam");
    c.adam.learning_rate = a.value("learning_rate", c.adam.learning_rate);
    c.adam.beta1 = a.value("beta1", c.adam.beta1);
    c.adam.beta2 = a.value("beta2", c.adam.beta2);
    c.adam.epsilon = a.value("epsilon", c.adam.epsilon);
    c.adam.max_steps = a.value("max_steps", c.adam.max_steps);
    c.adam.plateau_window = a.value("plateau_window", c.adam.plateau_window);
    c.adam.plateau_fraction = a.value("plateau_fraction", c.adam.plateau_fraction);
  }
  if (j.contains("readout")) {
    const json& r = j.at("readout");
    ReadoutConfig rc;
    for (const auto& m : r.at("per_qubit")) {
      const auto v = m.get<std::vector<double>>();
      if (v.size() != 4) throw std::invalid_argument("config: readout matrices are 2x2 row-major");
      RealMatrix p(2, 2);
      p << v[0], v[1], v[2], v[3];
      rc.per_qubit.push_back(p);
    }
    rc.calibration_shots = r.value("calibration_shots", rc.calibration_shots);
    rc.mitigate = r.value("mitigate", rc.mitigate);
    if (static_cast<int>(rc.per_qubit.size()) != c.n) throw std::invalid_argument("config: one readout matrix per qubit");
    for (const auto& p : rc.per_qubit) {
      ConfusionModel check;
      check.per_qubit = {p};
      check.validate();
    }
    c.readout = std::move(rc);
  }
  if (j.contains("crosscheck")) {
    const json& x = j.at("crosscheck");
    c.crosscheck_target = x.value("target", c.crosscheck_target);
    c.crosscheck_theta = x.value("theta", c.crosscheck_theta);
  }
  c.output_dir = j.value("output_dir", c.output_dir);

  if (c.n < 2) throw std::invalid_argument("config: n must be at least 2");
  if (c.kind == ConstraintKind::deterministic && c.n < 3) throw std::invalid_argument("config: deterministic map needs n >= 3");
  if (c.realizations < 1) throw std::invalid_argument("config: realizations must be positive");
  for (long long s : c.shots)
    if (s < 1) throw std::invalid_argument("config: shots must be positive");
  if (c.truth_mode == "lagos" && c.n != presets::lagos::kQubits)
    throw std::invalid_argument("config: the lagos parameters describe five qubits");
  return c;
}

inline ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config " + path);
  return from_json(json::parse(f));
}

inline json theta_to_json(const ThetaVector& th) {
  json values = json::object();
  for (int i = 0; i < th.size(); ++i) values[th.name(i)] = th[i];
  return json{{"n", th.n()}, {"family", family_name(th.family())}, {"values", values}};
}

inline ThetaVector theta_from_json(const json& j) {
  ThetaVector th(j.at("n").get<int>(), family_from_name(j.at("family").get<std::string>()));
  for (const auto& [k, v] : j.at("values").items()) th.set(k, v.get<double>());
  return th;
}

inline void write_json(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << "\n";
}

inline json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  return json::parse(f);
}

}  // namespace sslearn
