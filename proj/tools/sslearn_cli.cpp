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

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "sslearn/experiment/runner.hpp"

using namespace sslearn;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<uint64_t> seed;
  std::string out;
  std::optional<int> realizations;
  std::vector<long long> shots;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  app->add_option("--seed", o.seed, "master seed");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--realizations", o.realizations, "noise realizations per shot count");
  app->add_option("--shots", o.shots, "shots per Pauli observable")->delimiter(',');
}

ExperimentSetup setup_from(const CommonOptions& o) {
  json j = read_json(o.config);
  if (o.seed) j["seed"] = *o.seed;
  if (!o.out.empty()) j["output_dir"] = o.out;
  if (o.realizations) j["realizations"] = *o.realizations;
  if (!o.shots.empty()) j["shots"] = o.shots;
  return build_setup(ExperimentConfig::from_json(j));
}

/// Tables from a previous generate run, or freshly generated ones.
GeneratedData data_for(const ExperimentSetup& s, bool& flagged) {
  const auto dir = std::filesystem::path(s.cfg.output_dir);
  if (std::filesystem::exists(dir / "steady_state.json")) {
    const json meta = read_json((dir / "steady_state.json").string());
    if (meta.value("config_hash", std::string()) == s.cfg.hash()) {
      for (const auto& st : meta.at("states"))
        flagged = flagged || (!st.at("converged").get<bool>() && !st.at("fixed_steps").get<bool>());
      return load_generated(s);
    }
  }
  GeneratedData g = run_generate(s);
  flagged = flagged || g.flagged();
  return g;
}

std::string default_learned_theta(const ExperimentSetup& s) {
  const auto p = std::filesystem::path(s.cfg.output_dir) / ("theta_N" + std::to_string(s.cfg.shots.back()) + "_r0.json");
  return std::filesystem::exists(p) ? p.string() : std::string();
}

void report_steady(const GeneratedData& g) {
  for (size_t i = 0; i < g.steady.size(); ++i) {
    const auto& ss = g.steady[i];
    std::cout << "steady state " << i << ": iterations " << ss.iterations << ", gap " << ss.final_gap
              << (ss.flagged() ? " (NOT CONVERGED)" : "") << "\n";
    if (ss.flagged())
      for (const auto& [it, f] : ss.log) std::cerr << "  iter " << it << " frobenius bound " << f << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn local noise models from steady-state expectation values"};
  app.require_subcommand(1);

  CommonOptions gen_o, learn_o, val_o, cross_o, dia_o;
  std::vector<std::string> val_thetas;
  std::string cross_theta, theta_a, theta_b;

  auto* gen = app.add_subcommand("generate", "simulate steady states and write expectation tables");
  add_common(gen, gen_o);
  auto* learn = app.add_subcommand("learn", "fit the noise model to every noise realization");
  add_common(learn, learn_o);
  auto* val = app.add_subcommand("validate", "per-qubit local cost of candidate models");
  add_common(val, val_o);
  val->add_option("--theta", val_thetas, "additional parameter files");
  auto* cross = app.add_subcommand("crosscheck", "compare two-site reduced states on a second map");
  add_common(cross, cross_o);
  cross->add_option("--theta", cross_theta, "learned parameter file");
  auto* dia = app.add_subcommand("diamond", "diamond distances of CX and RESET gates between two parameter sets");
  add_common(dia, dia_o);
  dia->add_option("--theta-a", theta_a, "first parameter file")->required()->check(CLI::ExistingFile);
  dia->add_option("--theta-b", theta_b, "second parameter file (default: generating parameters)");

  CLI11_PARSE(app, argc, argv);

  bool flagged = false;
  try {
    if (*gen) {
      const auto s = setup_from(gen_o);
      const auto g = run_generate(s);
      report_steady(g);
      flagged = g.flagged();
      std::cout << "wrote " << s.cfg.output_dir << " (config " << s.cfg.hash() << ", seed " << s.cfg.seed << ")\n";
    } else if (*learn) {
      const auto s = setup_from(learn_o);
      const auto g = data_for(s, flagged);
      const auto rep = run_learn(s, g);
      std::printf("ideal reference: CX %.3e  RESET %.3e\n", rep.ideal_cx_mean, rep.ideal_reset_mean);
      for (const auto& sm : rep.summary)
        std::printf("N=%lld  CX %.3e +- %.1e  RESET %.3e +- %.1e\n", sm.shots, sm.cx_mean, sm.cx_two_sigma, sm.reset_mean,
                    sm.reset_two_sigma);
    } else if (*val) {
      const auto s = setup_from(val_o);
      const auto g = data_for(s, flagged);
      std::vector<std::pair<std::string, ThetaVector>> models = {{"true", s.truth},
                                                                 {"noiseless", ThetaVector(s.n(), NoiseFamily::noiseless)}};
      if (const auto p = default_learned_theta(s); !p.empty()) models.emplace_back("learned", theta_from_json(read_json(p)));
      for (const auto& p : val_thetas) models.emplace_back(std::filesystem::path(p).stem().string(), theta_from_json(read_json(p)));
      const auto& tables = g.noisy.at(s.cfg.shots.back()).front();
      for (const auto& r : run_validate(s, tables, models))
        std::printf("%-12s q%d  log10(phi) %8.3f\n", r.model.c_str(), r.qubit, r.log10_phi);
    } else if (*cross) {
      const auto s = setup_from(cross_o);
      std::string path = !cross_theta.empty() ? cross_theta : s.cfg.crosscheck_theta;
      if (path.empty()) path = default_learned_theta(s);
      if (path.empty()) throw std::invalid_argument("crosscheck: no learned parameters; run learn or pass --theta");
      const std::vector<std::pair<std::string, ThetaVector>> models = {
          {"learned", theta_from_json(read_json(path))},
          {"true", s.truth},
          {"noiseless", ThetaVector(s.n(), NoiseFamily::noiseless)}};
      const auto rep = run_crosscheck(s, models);
      flagged = rep.flagged;
      for (const char* m : {"learned", "true", "noiseless"})
        std::printf("%-10s mean RDM trace distance %.4e\n", m, rep.mean_distance(m));
    } else if (*dia) {
      const auto s = setup_from(dia_o);
      const ThetaVector a = theta_from_json(read_json(theta_a));
      const ThetaVector b = theta_b.empty() ? s.truth : theta_from_json(read_json(theta_b));
      std::filesystem::create_directories(s.cfg.output_dir);
      std::ofstream csv(std::filesystem::path(s.cfg.output_dir) / "diamond.csv");
      csv << "# config_hash: " << s.cfg.hash() << "\n# seed: " << s.cfg.seed << "\ngate,d_diamond\n";
      for (GateClass c : {GateClass::cx, GateClass::reset})
        for (const auto& r : compare_gates(a, b, c, s.timing, s.kind())) {
          std::printf("%-8s %.6e\n", r.gate.c_str(), r.d_diamond);
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.17g", r.d_diamond);
          csv << r.gate << ',' << buf << "\n";
        }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (flagged) {
    std::cerr << "error: steady-state iteration did not converge\n";
    return 3;
  }
  return 0;
}
