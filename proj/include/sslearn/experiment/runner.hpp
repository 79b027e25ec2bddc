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
#include <filesystem>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sslearn/experiment/config.hpp"
#include "sslearn/maps/deterministic.hpp"
#include "sslearn/maps/expectations.hpp"
#include "sslearn/maps/stochastic.hpp"
#include "sslearn/metrics/distance.hpp"

namespace sslearn {

/// splitmix64 finalizer; derives independent stream seeds from the master seed.
inline uint64_t mix_seed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  return mix_seed(mix_seed(mix_seed(mix_seed(seed) ^ a) ^ b) ^ c);
}

/// A resolved experiment: map structure, generating parameters and durations.
struct ExperimentSetup {
  ExperimentConfig cfg;
  GateTiming timing;
  ThetaVector truth;
  RotationAngles rotation{};

  ConstraintKind kind() const { return cfg.kind; }
  int n() const { return cfg.n; }
  /// One steady state for the stochastic map, two layer orders for the deterministic one.
  int num_states() const { return cfg.kind == ConstraintKind::stochastic ? 1 : 2; }
  /// Largest Pauli span needed by the constraints.
  int data_span() const { return cfg.kind == ConstraintKind::stochastic ? 3 : 4; }

  StochasticMapSpec stochastic_spec(const ThetaVector& th) const {
    StochasticMapSpec s;
    s.n = n();
    s.probs = cfg.probs;
    s.rotation = rotation;
    s.timing = timing;
    s.theta = th;
    return s;
  }

  DeterministicMapSpec deterministic_spec(const ThetaVector& th, int state, const presets::MapAngles& angles) const {
    DeterministicMapSpec s;
    s.n = n();
    s.even = angles.even;
    s.odd = angles.odd;
    s.timing = timing;
    s.theta = th;
    s.order = state == 0 ? LayerOrder::I : LayerOrder::II;
    return s;
  }

  std::unique_ptr<MapStepper> stepper(const ThetaVector& th, int state) const {
    if (cfg.kind == ConstraintKind::stochastic) return std::make_unique<StochasticStepper>(stochastic_spec(th));
    return std::make_unique<DeterministicStepper>(deterministic_spec(th, state, cfg.angles));
  }

  /// Starting point and learnable mask for the optimizer.
  ThetaVector learn_layout() const {
    ThetaVector th(n(), cfg.learn_family);
    if (cfg.kind == ConstraintKind::deterministic) th.fix_reset(n() - 1);
    return th;
  }

  ConstraintSet constraints(const ThetaVector& layout) const {
    if (cfg.kind == ConstraintKind::stochastic) return ConstraintSet::stochastic(stochastic_spec(layout), layout);
    return ConstraintSet::deterministic(deterministic_spec(layout, 0, cfg.angles), layout);
  }
};

inline ExperimentSetup build_setup(const ExperimentConfig& cfg) {
  ExperimentSetup s;
  s.cfg = cfg;
  const int n = cfg.n;
  std::mt19937_64 rng(derive_seed(cfg.seed, 1));
  if (cfg.timing_mode == "explicit") {
    s.timing.reset = cfg.reset_times;
    s.timing.cx = cfg.cx_times;
  } else {
    s.timing = random_timing(n, rng);
  }
  const double longest = cfg.kind == ConstraintKind::stochastic ? stochastic_t0(s.timing, n) : deterministic_t0(s.timing, n);
  s.timing.t0 = cfg.t0 > 0 ? cfg.t0 : longest;
  if (s.timing.t0 < longest * (1 - 1e-12)) throw std::invalid_argument("config: T0 shorter than the longest gate");
  s.timing.validate(n);

  const NoiseFamily family = cfg.kind == ConstraintKind::stochastic ? NoiseFamily::stochastic : NoiseFamily::deterministic;
  if (cfg.truth_mode == "lagos") {
    s.truth = presets::lagos::theta();
  } else if (cfg.truth_mode == "explicit") {
    s.truth = ThetaVector(n, cfg.learn_family == NoiseFamily::characterization ? NoiseFamily::characterization : family);
    for (const auto& [k, v] : cfg.truth_values) s.truth.set(k, v);
  } else {
    s.truth = random_truth(n, family, rng);
  }
  if (cfg.rotation) {
    s.rotation = *cfg.rotation;
  } else {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (auto& a : s.rotation) a = angle(rng);
  }
  return s;
}

struct GeneratedData {
  std::vector<SteadyState> steady;
  std::vector<ExpectationTable> exact;
  /// noisy[shots][realization][state]
  std::map<long long, std::vector<std::vector<ExpectationTable>>> noisy;

  bool flagged() const {
    for (const auto& s : steady)
      if (s.flagged()) return true;
    return false;
  }
};

namespace detail {

inline std::string state_tag(int state) { return state == 0 ? "I" : "II"; }

inline std::vector<std::string> artifact_metadata(const ExperimentSetup& s) {
  return {"config_hash: " + s.cfg.hash(), "master_seed: " + std::to_string(s.cfg.seed)};
}

/// Rotates each qubit of a window into the eigenbasis of its Pauli letter.
inline Matrix measurement_rotation(const std::string& letters) {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2), hs(2, 2);
  h << r, r, r, -r;
  hs << r, cplx(0, -r), r, cplx(0, r);
  Matrix u = Matrix::Ones(1, 1);
  for (char c : letters) u = kron(u, c == 'X' ? h : c == 'Y' ? hs : gates::identity());
  return u;
}

/// Expectations estimated from simulated counts through a readout confusion model.
inline ExpectationTable readout_table(const ExpectationTable& exact, const DensityMatrix& rho,
                                      const ReadoutConfig& ro, long long shots, uint64_t seed) {
  ExpectationTable out;
  out.n = exact.n;
  out.provenance = "noisy";
  out.seed = seed;
  std::mt19937_64 rng(seed);
  std::map<std::pair<int, int>, Matrix> rdm;
  std::map<std::pair<int, int>, ConfusionModel> estimated;
  for (const auto& [p, e] : exact.entries) {
    const auto [first, last] = p.window();
    const auto key = std::pair{first, last};
    if (!rdm.count(key)) {
      std::vector<int> keep;
      for (int q = first; q <= last; ++q) keep.push_back(q);
      rdm[key] = partial_trace(rho, keep).data;
      ConfusionModel truth;
      truth.per_qubit.assign(ro.per_qubit.begin() + first, ro.per_qubit.begin() + last + 1);
      estimated[key] = estimate_confusion(truth, ro.calibration_shots, derive_seed(seed, 7, static_cast<uint64_t>(first), static_cast<uint64_t>(last)));
    }
    const std::string letters = p.letters_on(first, last);
    const Matrix u = measurement_rotation(letters);
    const Matrix rotated = u * rdm[key] * u.adjoint();
    RealVector ideal = rotated.diagonal().real().cwiseMax(0.0);
    ideal /= ideal.sum();
    ConfusionModel truth;
    truth.per_qubit.assign(ro.per_qubit.begin() + first, ro.per_qubit.begin() + last + 1);
    const auto counts = sample_counts(truth.matrix() * ideal, shots, rng);
    const double v = ro.mitigate ? corrected_expectation(letters, counts, estimated[key])
                                 : parity_expectation(counts_to_distribution(counts), letters_mask(letters));
    out.entries[p] = ExpectationEntry{v, shots};
  }
  return out;
}

}  // namespace detail

inline uint64_t noise_seed(const ExperimentSetup& s, long long shots, int realization, int state) {
  return derive_seed(s.cfg.seed, 2 + static_cast<uint64_t>(state), static_cast<uint64_t>(shots),
                     static_cast<uint64_t>(realization));
}

/// Steady states of the generating model, exact and shot-noised tables.
/// Writes artifacts into cfg.output_dir when `write` is set.
inline GeneratedData run_generate(const ExperimentSetup& s, bool write = true) {
  GeneratedData g;
  const auto paulis = enumerate_span_paulis(s.n(), s.data_span());
  for (int st = 0; st < s.num_states(); ++st) {
    const auto map = s.stepper(s.truth, st);
    g.steady.push_back(steady_state(*map, DensityMatrix::zero_state(s.n()), s.cfg.steady));
    ExpectationTable t = measure_paulis(g.steady.back(), paulis);
    t.metadata = detail::artifact_metadata(s);
    t.metadata.push_back("state: " + detail::state_tag(st));
    g.exact.push_back(std::move(t));
  }
  for (long long shots : s.cfg.shots) {
    auto& per_shot = g.noisy[shots];
    for (int r = 0; r < s.cfg.realizations; ++r) {
      std::vector<ExpectationTable> states;
      for (int st = 0; st < s.num_states(); ++st) {
        const uint64_t seed = noise_seed(s, shots, r, st);
        ExpectationTable t = s.cfg.readout ? detail::readout_table(g.exact[static_cast<size_t>(st)], g.steady[static_cast<size_t>(st)].rho,
                                                                   *s.cfg.readout, shots, seed)
                                           : inject_shot_noise(g.exact[static_cast<size_t>(st)], shots, seed);
        t.metadata = g.exact[static_cast<size_t>(st)].metadata;
        t.metadata.push_back("realization: " + std::to_string(r));
        states.push_back(std::move(t));
      }
      per_shot.push_back(std::move(states));
    }
  }
  if (!write) return g;
  namespace fs = std::filesystem;
  const fs::path dir(s.cfg.output_dir);
  fs::create_directories(dir);
  write_json((dir / "config.json").string(), s.cfg.raw);
  json truth = theta_to_json(s.truth);
  truth["config_hash"] = s.cfg.hash();
  truth["seed"] = s.cfg.seed;
  truth["timing"] = json{{"t0", s.timing.t0}, {"reset", s.timing.reset}, {"cx", s.timing.cx},
                         {"sqrt_x", s.timing.sqrt_x}, {"hadamard", s.timing.hadamard}};
  if (s.kind() == ConstraintKind::stochastic) truth["rotation"] = s.rotation;
  write_json((dir / "truth.json").string(), truth);
  json steady = json::array();
  for (size_t st = 0; st < g.steady.size(); ++st) {
    const auto& ss = g.steady[st];
    steady.push_back(json{{"state", detail::state_tag(static_cast<int>(st))}, {"iterations", ss.iterations},
                          {"final_gap", ss.final_gap}, {"converged", ss.converged},
                          {"fixed_steps", ss.fixed_steps}, {"log", ss.log}});
    g.exact[st].save((dir / ("exact_" + detail::state_tag(static_cast<int>(st)) + ".csv")).string());
  }
  write_json((dir / "steady_state.json").string(),
             json{{"config_hash", s.cfg.hash()}, {"seed", s.cfg.seed}, {"states", steady}});
  for (const auto& [shots, reals] : g.noisy)
    for (size_t r = 0; r < reals.size(); ++r)
      for (size_t st = 0; st < reals[r].size(); ++st)
        reals[r][st].save((dir / ("noisy_N" + std::to_string(shots) + "_r" + std::to_string(r) + "_" +
                                  detail::state_tag(static_cast<int>(st)) + ".csv"))
                              .string());
  return g;
}

/// Reads tables written by run_generate.
inline GeneratedData load_generated(const ExperimentSetup& s) {
  namespace fs = std::filesystem;
  const fs::path dir(s.cfg.output_dir);
  GeneratedData g;
  for (int st = 0; st < s.num_states(); ++st)
    g.exact.push_back(ExpectationTable::load((dir / ("exact_" + detail::state_tag(st) + ".csv")).string()));
  for (long long shots : s.cfg.shots)
    for (int r = 0; r < s.cfg.realizations; ++r) {
      std::vector<ExpectationTable> states;
      for (int st = 0; st < s.num_states(); ++st)
        states.push_back(ExpectationTable::load(
            (dir / ("noisy_N" + std::to_string(shots) + "_r" + std::to_string(r) + "_" + detail::state_tag(st) + ".csv")).string()));
      g.noisy[shots].push_back(std::move(states));
    }
  return g;
}

struct RealizationResult {
  long long shots = 0;
  int realization = 0;
  OptimizerReport report;
  std::vector<GateComparison> cx;
  std::vector<GateComparison> reset;
  double mean_cx = 0.0;
  double mean_reset = 0.0;
};

struct ShotSummary {
  long long shots = 0;
  double cx_mean = 0.0, cx_two_sigma = 0.0;
  double reset_mean = 0.0, reset_two_sigma = 0.0;
};

struct LearnReport {
  std::vector<RealizationResult> runs;
  std::vector<ShotSummary> summary;
  /// Noiseless model against the generating one.
  std::vector<GateComparison> ideal_cx, ideal_reset;
  double ideal_cx_mean = 0.0, ideal_reset_mean = 0.0;
};

inline double mean_distance(const std::vector<GateComparison>& rows) {
  double s = 0;
  for (const auto& r : rows) s += r.d_diamond;
  return rows.empty() ? 0.0 : s / static_cast<double>(rows.size());
}

/// Mean and twice the sample standard deviation.
inline std::pair<double, double> mean_two_sigma(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  if (v.size() < 2) return {m, 0.0};
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, 2.0 * std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

/// Learns one model per shot count and realization and compares its gates with the truth.
inline RealizationResult learn_one(const ExperimentSetup& s, const QuadraticCost& cost, long long shots, int r) {
  RealizationResult rr;
  rr.shots = shots;
  rr.realization = r;
  rr.report = adam_minimize(cost, s.learn_layout(), s.cfg.adam);
  rr.cx = compare_gates(rr.report.theta_est, s.truth, GateClass::cx, s.timing, s.kind());
  rr.reset = compare_gates(rr.report.theta_est, s.truth, GateClass::reset, s.timing, s.kind());
  rr.mean_cx = mean_distance(rr.cx);
  rr.mean_reset = mean_distance(rr.reset);
  return rr;
}

inline LearnReport run_learn(const ExperimentSetup& s, const GeneratedData& data, bool write = true) {
  LearnReport rep;
  const ThetaVector layout = s.learn_layout();
  const ConstraintSet cs = s.constraints(layout);
  const ThetaVector ideal(s.n(), NoiseFamily::noiseless);
  rep.ideal_cx = compare_gates(ideal, s.truth, GateClass::cx, s.timing, s.kind(), "ideal");
  rep.ideal_reset = compare_gates(ideal, s.truth, GateClass::reset, s.timing, s.kind(), "ideal");
  rep.ideal_cx_mean = mean_distance(rep.ideal_cx);
  rep.ideal_reset_mean = mean_distance(rep.ideal_reset);
  for (const auto& [shots, reals] : data.noisy) {
    std::vector<double> cx, reset;
    for (size_t r = 0; r < reals.size(); ++r) {
      const QuadraticCost cost(cs, reals[r]);
      rep.runs.push_back(learn_one(s, cost, shots, static_cast<int>(r)));
      cx.push_back(rep.runs.back().mean_cx);
      reset.push_back(rep.runs.back().mean_reset);
    }
    ShotSummary sum;
    sum.shots = shots;
    std::tie(sum.cx_mean, sum.cx_two_sigma) = mean_two_sigma(cx);
    std::tie(sum.reset_mean, sum.reset_two_sigma) = mean_two_sigma(reset);
    rep.summary.push_back(sum);
  }
  if (!write) return rep;

  namespace fs = std::filesystem;
  const fs::path dir(s.cfg.output_dir);
  fs::create_directories(dir);
  json runs = json::array();
  for (const auto& rr : rep.runs) {
    json traj = json::array();
    for (const auto& [step, c] : rr.report.trajectory) traj.push_back({step, c});
    runs.push_back(json{{"shots", rr.shots},
                        {"realization", rr.realization},
                        {"steps", rr.report.steps},
                        {"stop_reason", stop_reason_name(rr.report.stop_reason)},
                        {"initial_cost", rr.report.initial_cost},
                        {"final_cost", rr.report.final_cost},
                        {"zero_gradient", rr.report.zero_gradient},
                        {"mean_cx", rr.mean_cx},
                        {"mean_reset", rr.mean_reset},
                        {"trajectory", traj}});
    json th = theta_to_json(rr.report.theta_est);
    th["config_hash"] = s.cfg.hash();
    th["seed"] = s.cfg.seed;
    write_json((dir / ("theta_N" + std::to_string(rr.shots) + "_r" + std::to_string(rr.realization) + ".json")).string(), th);
  }
  json summary = json::array();
  for (const auto& sm : rep.summary)
    summary.push_back(json{{"shots", sm.shots}, {"cx_mean", sm.cx_mean}, {"cx_two_sigma", sm.cx_two_sigma},
                           {"reset_mean", sm.reset_mean}, {"reset_two_sigma", sm.reset_two_sigma}});
  write_json((dir / "learn_report.json").string(),
             json{{"config_hash", s.cfg.hash()},
                  {"seed", s.cfg.seed},
                  {"ideal", {{"cx_mean", rep.ideal_cx_mean}, {"reset_mean", rep.ideal_reset_mean}}},
                  {"summary", summary},
                  {"runs", runs}});
  std::ofstream csv(dir / "gate_comparisons.csv");
  csv << "# config_hash: " << s.cfg.hash() << "\n# seed: " << s.cfg.seed << "\n";
  csv << "shots,realization,gate,d_diamond,reference\n";
  char buf[64];
  auto row = [&](const std::string& shots, const std::string& r, const GateComparison& g) {
    std::snprintf(buf, sizeof(buf), "%.17g", g.d_diamond);
    csv << shots << ',' << r << ',' << g.gate << ',' << buf << ',' << g.reference << "\n";
  };
  for (const auto& g : rep.ideal_cx) row("", "", g);
  for (const auto& g : rep.ideal_reset) row("", "", g);
  for (const auto& rr : rep.runs) {
    for (const auto& g : rr.cx) row(std::to_string(rr.shots), std::to_string(rr.realization), g);
    for (const auto& g : rr.reset) row(std::to_string(rr.shots), std::to_string(rr.realization), g);
  }
  return rep;
}

struct HeatMapRow {
  std::string model;
  int qubit = 0;
  double phi = 0.0;
  double log10_phi = 0.0;
};

/// Per-qubit local cost of each model on the given data.
inline std::vector<HeatMapRow> run_validate(const ExperimentSetup& s, const std::vector<ExpectationTable>& tables,
                                            const std::vector<std::pair<std::string, ThetaVector>>& models,
                                            bool write = true) {
  const ThetaVector layout = s.learn_layout();
  const ConstraintSet cs = s.constraints(layout);
  const QuadraticCost cost(cs, tables);
  std::vector<HeatMapRow> rows;
  for (const auto& [name, th] : models)
    for (int q = 0; q < s.n(); ++q) {
      const double phi = cost.local_cost(q, th);
      rows.push_back({name, q, phi, std::log10(std::max(phi, 1e-300))});
    }
  if (write) {
    std::filesystem::create_directories(s.cfg.output_dir);
    std::ofstream csv(std::filesystem::path(s.cfg.output_dir) / "heatmap.csv");
    csv << "# config_hash: " << s.cfg.hash() << "\n# seed: " << s.cfg.seed << "\n";
    csv << "model,qubit,phi,log10_phi\n";
    char buf[96];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", r.phi, r.log10_phi);
      csv << r.model << ',' << r.qubit << ',' << buf << "\n";
    }
  }
  return rows;
}

struct CrosscheckRow {
  std::string model;
  std::string state;
  int pair = 0;
  /// XX, XY, ..., ZZ on (pair, pair+1).
  std::array<double, 9> paulis{};
  /// Trace distance of the model RDM to the reference RDM.
  double trace_distance = 0.0;
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;
  bool flagged = false;

  /// Mean RDM trace distance of one model over pairs and states.
  double mean_distance(const std::string& model) const {
    double s = 0;
    int c = 0;
    for (const auto& r : rows)
      if (r.model == model) {
        s += r.trace_distance;
        ++c;
      }
    return c ? s / c : 0.0;
  }
};

/// Simulates the cross-check map under the generating model (playing the
/// hardware, with shot noise) and under each candidate model, and compares
/// the two-site reduced states.
inline CrosscheckReport run_crosscheck(const ExperimentSetup& s, const std::vector<std::pair<std::string, ThetaVector>>& models,
                                       bool write = true) {
  if (s.kind() != ConstraintKind::deterministic) throw std::invalid_argument("crosscheck needs a deterministic map");
  const presets::MapAngles& target = presets::map_angles(s.cfg.crosscheck_target);
  const int n = s.n();
  std::vector<PauliString> pair_paulis;
  for (int k = 0; k + 1 < n; ++k)
    for (const auto& w : all_pauli_words(2))
      if (w != "II") pair_paulis.push_back(PauliString::on_window(n, k, w));
  static const char* kTwoSite[9] = {"XX", "XY", "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ"};
  const long long shots = s.cfg.shots.back();
  CrosscheckReport rep;
  for (int st = 0; st < 2; ++st) {
    const DeterministicStepper hw(s.deterministic_spec(s.truth, st, target));
    const SteadyState hw_ss = steady_state(hw, DensityMatrix::zero_state(n), s.cfg.steady);
    rep.flagged = rep.flagged || hw_ss.flagged();
    const ExpectationTable hw_table =
        inject_shot_noise(measure_paulis(hw_ss, pair_paulis), shots, derive_seed(s.cfg.seed, 11, static_cast<uint64_t>(st)));
    std::vector<DensityMatrix> hw_rdm;
    for (int k = 0; k + 1 < n; ++k) hw_rdm.push_back(rdm_from_expectations(hw_table, k));
    auto emit = [&](const std::string& name, const ExpectationTable& table, const std::vector<DensityMatrix>& rdms) {
      for (int k = 0; k + 1 < n; ++k) {
        CrosscheckRow row;
        row.model = name;
        row.state = detail::state_tag(st);
        row.pair = k;
        for (int a = 0; a < 9; ++a) row.paulis[static_cast<size_t>(a)] = table.value(PauliString::on_window(n, k, kTwoSite[a]));
        row.trace_distance = trace_distance(rdms[static_cast<size_t>(k)], hw_rdm[static_cast<size_t>(k)]);
        rep.rows.push_back(row);
      }
    };
    emit("hardware", hw_table, hw_rdm);
    for (const auto& [name, th] : models) {
      const DeterministicStepper m(s.deterministic_spec(th, st, target));
      const SteadyState ss = steady_state(m, DensityMatrix::zero_state(n), s.cfg.steady);
      rep.flagged = rep.flagged || ss.flagged();
      std::vector<DensityMatrix> rdms;
      for (int k = 0; k + 1 < n; ++k) rdms.push_back(partial_trace(ss.rho, {k, k + 1}));
      emit(name, measure_paulis(ss, pair_paulis), rdms);
    }
  }
  if (write) {
    std::filesystem::create_directories(s.cfg.output_dir);
    std::ofstream csv(std::filesystem::path(s.cfg.output_dir) / "crosscheck.csv");
    csv << "# config_hash: " << s.cfg.hash() << "\n# seed: " << s.cfg.seed << "\n# target: " << s.cfg.crosscheck_target << "\n";
    csv << "model,state,pair";
    for (const char* p : kTwoSite) csv << ',' << p;
    csv << ",trace_distance\n";
    char buf[64];
    for (const auto& r : rep.rows) {
      csv << r.model << ',' << r.state << ',' << r.pair;
      for (double v : r.paulis) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        csv << ',' << buf;
      }
      std::snprintf(buf, sizeof(buf), "%.17g", r.trace_distance);
      csv << ',' << buf << "\n";
    }
  }
  return rep;
}

}  // namespace sslearn
