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

#include <array>
#include <stdexcept>
#include <string>

#include "sslearn/maps/deterministic.hpp"
#include "sslearn/maps/stochastic.hpp"
#include "sslearn/noise/theta.hpp"

namespace sslearn::presets {

/// Gate probabilities in the order RESCX, sqrt(X), H, R.
inline constexpr std::array<std::array<double, 4>, 3> kProbabilitySets = {{
    {0.3, 0.2, 0.2, 0.2},
    {0.5, 0.1, 0.2, 0.2},
    {0.7, 0.1, 0.1, 0.1},
}};

struct MapAngles {
  ResuAngles even;
  ResuAngles odd;
};

inline const std::array<MapAngles, 3> kMapAngles = {{
    {{{-2.63, 1.71, 0.21}, {-1.07, -2.12, 2.73}}, {{1.42, -2.92, -0.33}, {2.83, 1.36, -1.08}}},
    {{{2.13, -1.31, -0.71}, {-2.07, -1.12, -2.73}}, {{-2.32, 1.92, -0.73}, {-2.83, 1.87, -1.98}}},
    {{{0.77, -2.46, 2.59}, {-0.79, 1.09, -1.80}}, {{2.57, 3.04, 2.67}, {-2.72, -1.79, 0.21}}},
}};

/// "set1".."set3".
inline const std::array<double, 4>& probability_set(const std::string& name) {
  if (name == "set1") return kProbabilitySets[0];
  if (name == "set2") return kProbabilitySets[1];
  if (name == "set3") return kProbabilitySets[2];
  throw std::invalid_argument("unknown probability set " + name);
}

/// Rescales to unit sum. Set 1 is tabulated as 0.3, 0.2, 0.2, 0.2.
inline std::array<double, 4> normalized(std::array<double, 4> p) {
  double sum = 0;
  for (double v : p) sum += v;
  if (!(sum > 0)) throw std::invalid_argument("probabilities must have a positive sum");
  for (double& v : p) v /= sum;
  return p;
}

/// "map-1".."map-3".
inline const MapAngles& map_angles(const std::string& name) {
  if (name == "map-1") return kMapAngles[0];
  if (name == "map-2") return kMapAngles[1];
  if (name == "map-3") return kMapAngles[2];
  throw std::invalid_argument("unknown deterministic map " + name);
}

// Parameters estimated on a five-qubit line of ibm_lagos.
namespace lagos {

inline constexpr int kQubits = 5;
inline constexpr double kT0 = 1.792e-6;
inline constexpr std::array<double, 5> kX = {0.1, 1e-5, 1e-5, 1e-5, 1e-5};
inline constexpr std::array<double, 5> kY = {1e-5, 0.1, 0.1, 1e-5, 1e-5};
inline constexpr std::array<double, 5> kZ = {1e-5, 0.1, 0.1, 1e-5, 1e-5};
inline constexpr std::array<double, 5> kAmp = {0.0598, 0.0377, 0.1, 1e-5, 0.0749};
inline constexpr std::array<double, 5> kEx = {1e-5, 0.0961, 0.0705, 0.000279, 1e-5};
inline constexpr std::array<double, 5> kTheta0 = {0.926, 0.941, 0.905, 0.99, 0.96};
inline constexpr std::array<double, 5> kTheta1 = {0.99, 0.927, 0.929, 0.895, 0.96};
/// CX triples ordered 0->1, 1->0, 1->2, 2->1, 2->3, 3->2, 3->4, 4->3.
inline constexpr std::array<std::array<double, 3>, 8> kCx = {{
    {0.976, 1.352, 1.0},
    {1.053, 1.029, 0.587},
    {0.791, 0.711, 1.0},
    {0.987, 1.020, 0.936},
    {1.082, 0.973, 1.0},
    {0.970, 1.011, 0.627},
    {0.958, 0.930, 1.0},
    {1.062, 1.008, 1.030},
}};

inline ThetaVector theta() {
  ThetaVector th(kQubits, NoiseFamily::characterization);
  for (int q = 0; q < kQubits; ++q) {
    const auto i = static_cast<size_t>(q);
    th.set_strengths(q, NoiseStrengths{kX[i], kY[i], kZ[i], kAmp[i], kEx[i]});
    th.set_reset(q, kTheta0[i], kTheta1[i]);
  }
  for (int k = 0; k + 1 < kQubits; ++k) {
    th.set_cx(k, k + 1, kCx[static_cast<size_t>(2 * k)]);
    th.set_cx(k + 1, k, kCx[static_cast<size_t>(2 * k + 1)]);
  }
  return th;
}

}  // namespace lagos

}  // namespace sslearn::presets
