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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sslearn/experiment/presets.hpp"
#include "sslearn/metrics/distance.hpp"
#include "sslearn/noise/gates.hpp"
#include "sslearn/noise/lindblad.hpp"
#include "sslearn/noise/theta.hpp"
#include "test_util.hpp"

using namespace sslearn;
using sslearn::testing::min_eigenvalue;
using sslearn::testing::random_hermitian;
using sslearn::testing::random_matrix;

namespace {

void expect_cptp(const LocalChannel& ch, double tol = 1e-10) {
  const Eigen::Index d = ch.dim();
  EXPECT_GT(min_eigenvalue(choi_matrix(ch)), -tol);
  EXPECT_LT((adjoint(ch).apply(Matrix::Identity(d, d)) - Matrix::Identity(d, d)).norm(), tol);
}

Matrix bloch_state(double x, double y, double z) {
  return 0.5 * (gates::identity() + x * gates::x() + y * gates::y() + z * gates::z());
}

double bloch(const Matrix& rho, const Matrix& p) { return (rho * p).trace().real(); }

NoiseStrengths random_strengths(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> s(0.0, 0.1), e(0.0, 0.5);
  return NoiseStrengths{s(rng), s(rng), s(rng), s(rng), e(rng)};
}

}  // namespace

TEST(IdleChannel, ZeroNoiseIsIdentity) {
  const auto ch = idle_channel(NoiseStrengths{}, 0.7, 0);
  EXPECT_LT((ch.liouville - Matrix::Identity(4, 4)).norm(), 1e-15);
  EXPECT_THROW(idle_channel(NoiseStrengths{}, -0.1, 0), std::invalid_argument);
}

TEST(IdleChannel, DephasingMatchesAnalyticDecay) {
  const double th = 0.07, t = 1.3;
  const auto ch = idle_channel(NoiseStrengths{0, 0, th, 0, 0}, t, 0);
  const Matrix out = ch.apply(bloch_state(0.6, -0.3, 0.5));
  EXPECT_NEAR(bloch(out, gates::x()), 0.6 * std::exp(-2 * th * t), 1e-13);
  EXPECT_NEAR(bloch(out, gates::y()), -0.3 * std::exp(-2 * th * t), 1e-13);
  EXPECT_NEAR(bloch(out, gates::z()), 0.5, 1e-13);
}

TEST(IdleChannel, AmplitudeDampingMatchesAnalyticDecay) {
  const double a = 0.08, t = 2.0;
  const auto ch = idle_channel(NoiseStrengths{0, 0, 0, a, 0}, t, 0);
  Matrix one = Matrix::Zero(2, 2);
  one(1, 1) = 1;
  EXPECT_NEAR(ch.apply(one)(1, 1).real(), std::exp(-a * t), 1e-13);
}

TEST(IdleChannel, ExcitedFractionSetsThermalPopulation) {
  const auto ch = idle_channel(NoiseStrengths{0, 0, 0, 0.1, 0.2}, 400.0, 0);
  EXPECT_NEAR(ch.apply(bloch_state(0, 0, 1))(1, 1).real(), 0.2, 1e-10);
}

TEST(IdleChannel, SemigroupAndCptp) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_strengths(rng);
    const auto a = idle_channel(s, 0.3, 0), b = idle_channel(s, 0.9, 0);
    EXPECT_LT((compose(b, a).liouville - idle_channel(s, 1.2, 0).liouville).norm(), 1e-10);
    expect_cptp(a);
  }
}

TEST(InverseIdle, ComposesToIdentity) {
  std::mt19937_64 rng(22);
  EXPECT_LT((inverse_idle_superop(NoiseStrengths{}, 1.0, 0).liouville - Matrix::Identity(4, 4)).norm(), 1e-15);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_strengths(rng);
    const auto fwd = idle_channel(s, 1.0, 0);
    const auto inv = inverse_idle_superop(s, 1.0, 0);
    const Matrix x = random_matrix(2, rng);
    EXPECT_LT((inv.apply(fwd.apply(x)) - x).norm(), 1e-10);
  }
}

TEST(InverseIdle, InflatesCoherence) {
  const auto inv = inverse_idle_superop(NoiseStrengths{0, 0, 0.1, 0, 0}, 1.0, 0);
  EXPECT_NEAR(bloch(inv.apply(bloch_state(0.3, 0, 0)), gates::x()), 0.3 * std::exp(0.2), 1e-13);
}

TEST(NoisyUnitary, Reductions) {
  std::mt19937_64 rng(23);
  const Matrix h = random_hermitian(2, rng);
  const auto ch = noisy_unitary_channel(h, {NoiseStrengths{}}, 0.4, {0});
  const Matrix u = matrix_exp(-kI * 0.4 * h);
  EXPECT_LT((ch.liouville - LocalChannel::unitary({0}, u).liouville).norm(), 1e-12);

  const auto s = random_strengths(rng);
  EXPECT_LT((noisy_unitary_channel(Matrix::Zero(2, 2), {s}, 0.4, {0}).liouville - idle_channel(s, 0.4, 0).liouville)
                .norm(),
            1e-12);

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1;
  EXPECT_THROW(noisy_unitary_channel(bad, {s}, 0.1, {0}), std::invalid_argument);
}

TEST(NoisyUnitary, IdealCxHamiltonian) {
  const auto ch = noisy_unitary_channel(cx_hamiltonian(1, 1, 1), {NoiseStrengths{}, NoiseStrengths{}},
                                        std::numbers::pi / 4, {0, 1});
  EXPECT_LT((ch.liouville - LocalChannel::unitary({0, 1}, gates::cx()).liouville).norm(), 1e-12);
}

TEST(NoisyUnitary, TwoQubitCptp) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 10; ++trial)
    expect_cptp(noisy_unitary_channel(cx_hamiltonian(1, 1, 1), {random_strengths(rng), random_strengths(rng)}, 0.8,
                                      {2, 3}));
}

TEST(Trotter, NoiselessIsTheGate) {
  const auto ch = trotter_noisy_1q(gates::sqrt_x(), NoiseStrengths{}, 0.01, 0);
  EXPECT_LT((ch.liouville - LocalChannel::unitary({0}, gates::sqrt_x()).liouville).norm(), 1e-14);
}

// U = exp(-i t H) with H = (pi/4) X, the generator of X^1/2 per unit of T0.
TEST(Trotter, SplittingErrorAgainstJointExponential) {
  const Matrix h = (std::numbers::pi / 4) * gates::x();
  const NoiseStrengths s{0, 0, 0.05, 0, 0};
  const double t = 0.01;
  const auto exact = noisy_unitary_channel(h, {s}, t, {0});
  const auto split = trotter_noisy_1q(matrix_exp(-kI * t * h), s, t, 0);
  EXPECT_LT(diamond_distance(exact, split), 1e-5);
}

TEST(Trotter, SecondOrderScaling) {
  const Matrix h = (std::numbers::pi / 4) * gates::x() + 0.3 * gates::y();
  const NoiseStrengths s{0.1, 0.1, 0.1, 0.1, 0.3};
  auto gap = [&](double t) {
    return diamond_distance(noisy_unitary_channel(h, {s}, t, {0}), trotter_noisy_1q(matrix_exp(-kI * t * h), s, t, 0));
  };
  const double g1 = gap(0.01), g2 = gap(0.005);
  EXPECT_LT(g1, 1e-3);
  EXPECT_NEAR(g1 / g2, 4.0, 0.2);
}

TEST(NoisyReset, Examples) {
  const auto ideal = noisy_reset(1.0, 1.0);
  EXPECT_LT((ideal.apply(bloch_state(0.2, -0.4, -0.7)) - bloch_state(0, 0, 1)).norm(), 1e-15);

  const auto r = noisy_reset(0.9, 0.8);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 0.85;
  expect(1, 1) = 0.15;
  EXPECT_LT((r.apply(0.5 * gates::identity()) - expect).norm(), 1e-15);

  const auto lagos = presets::lagos::theta();
  EXPECT_DOUBLE_EQ(lagos.reset(0).first, 0.926);
  EXPECT_DOUBLE_EQ(lagos.reset(0).second, 0.99);
  expect_cptp(noisy_reset(0.926, 0.99));

  EXPECT_THROW(noisy_reset(1.1, 0.5), std::invalid_argument);
  EXPECT_THROW(noisy_reset(0.5, -0.1), std::invalid_argument);
}

TEST(NoisyReset, TracePreservingOnGrid) {
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) expect_cptp(noisy_reset(i / 10.0, j / 10.0));
}

TEST(CxHamiltonian, Examples) {
  EXPECT_LT(cx_hamiltonian(0, 0, 0).norm(), 1e-15);
  const Matrix h = cx_hamiltonian(0.976, 1.352, 1.0);
  EXPECT_LT((h - h.adjoint()).norm(), 1e-15);
  const Matrix expect = 0.976 * kron(gates::z(), gates::x()) - 1.352 * kron(gates::identity(), gates::x()) -
                        1.0 * kron(gates::z(), gates::identity());
  EXPECT_LT((h - expect).norm(), 1e-15);
  const auto cx01 = presets::lagos::theta().cx(0, 1);
  EXPECT_DOUBLE_EQ(cx01[0], 0.976);
  EXPECT_DOUBLE_EQ(cx01[1], 1.352);
  EXPECT_DOUBLE_EQ(cx01[2], 1.0);
}

TEST(RotationFromPhis, Examples) {
  const Matrix u = gates::rotation_from_phis(0, 0, 0);
  const Matrix xx = gates::sqrt_x() * gates::sqrt_x();
  EXPECT_LT((u - xx).norm(), 1e-14);
  EXPECT_NEAR(std::abs((gates::x().adjoint() * u).trace()), 2.0, 1e-14);

  const auto& even = presets::map_angles("map-1").even.u1;
  EXPECT_DOUBLE_EQ(even[0], -2.63);
  EXPECT_DOUBLE_EQ(even[1], 1.71);
  EXPECT_DOUBLE_EQ(even[2], 0.21);
  const Matrix r = gates::rotation_from_phis(even[0], even[1], even[2]);
  EXPECT_LT((r - gates::rz(even[0]) * gates::sqrt_x() * gates::rz(even[1]) * gates::sqrt_x() * gates::rz(even[2])).norm(),
            1e-14);

  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix v = gates::rotation_from_phis(ang(rng), ang(rng), ang(rng));
    EXPECT_LT((v.adjoint() * v - Matrix::Identity(2, 2)).norm(), 1e-12);
  }
}

TEST(ThetaVector, BoundsAndFamilies) {
  ThetaVector th(4, NoiseFamily::deterministic);
  EXPECT_EQ(th.size(), 7 * 4 + 6 * 3);
  const int z = th.qubit_index(2, ThetaVector::kZ);
  EXPECT_DOUBLE_EQ(th.lower(z), 1e-5);
  EXPECT_DOUBLE_EQ(th.upper(z), 0.1);
  const int ex = th.qubit_index(1, ThetaVector::kEx);
  EXPECT_DOUBLE_EQ(th.lower(ex), 0.0);
  EXPECT_DOUBLE_EQ(th.upper(ex), 0.5);
  const int r0 = th.qubit_index(0, ThetaVector::kReset0);
  EXPECT_DOUBLE_EQ(th.lower(r0), 0.5);
  EXPECT_DOUBLE_EQ(th.upper(r0), 0.99);
  const int c = th.cx_index(2, 1, 3);
  EXPECT_DOUBLE_EQ(th.lower(c), 0.5);
  EXPECT_DOUBLE_EQ(th.upper(c), 1.5);
  EXPECT_EQ(th.name(c), "cx2-1.theta3");
  EXPECT_FALSE(th.is_free(c));
  EXPECT_TRUE(ThetaVector(4, NoiseFamily::characterization).is_free(c));

  ThetaVector st(4, NoiseFamily::stochastic);
  EXPECT_EQ(st.free_indices().size(), 4u * 4u);
  EXPECT_FALSE(st.is_free(st.qubit_index(0, ThetaVector::kX)));
  EXPECT_DOUBLE_EQ(st[st.qubit_index(0, ThetaVector::kX)], 0.0);
  EXPECT_DOUBLE_EQ(st[st.qubit_index(0, ThetaVector::kZ)], 0.03);
  EXPECT_DOUBLE_EQ(st[st.qubit_index(0, ThetaVector::kReset1)], 0.95);
  EXPECT_TRUE(ThetaVector(4, NoiseFamily::noiseless).free_indices().empty());

  st.set(st.qubit_index(1, ThetaVector::kZ), 0.2);
  EXPECT_THROW(st.check_bounds(), std::invalid_argument);
  st.clamp();
  EXPECT_DOUBLE_EQ(st[st.qubit_index(1, ThetaVector::kZ)], 0.1);
}

TEST(ThetaVector, RandomTruthRanges) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const auto th = random_truth(5, NoiseFamily::stochastic, rng);
    for (int q = 0; q < 5; ++q) {
      const auto s = th.strengths(q);
      EXPECT_GE(s.z, 0.01);
      EXPECT_LE(s.z, 0.07);
      EXPECT_GE(s.amp, 0.01);
      EXPECT_LE(s.amp, 0.07);
      EXPECT_EQ(s.x, 0.0);
      const auto [r0, r1] = th.reset(q);
      EXPECT_GE(r1, 0.87);
      EXPECT_LE(r0, 0.98);
      EXPECT_GE(r0, r1);
    }
  }
}

TEST(GatePrimitives, CptpForRandomTheta) {
  std::mt19937_64 rng(27);
  GateTiming timing = random_timing(4, rng);
  timing.t0 = 2e-6;
  for (int trial = 0; trial < 5; ++trial) {
    const auto th = random_truth(4, NoiseFamily::deterministic, rng);
    for (int q = 0; q + 1 < 4; ++q) {
      const auto cx = single_branch({q, q + 1}, {cx_primitive(th, q + 1, q, timing.cx_time(q + 1, q) / timing.t0)});
      expect_cptp(LocalChannel::from_liouville({q, q + 1}, cx.value(th.values())));
      const auto rs = single_branch({q}, {reset_primitive(th, q)});
      expect_cptp(LocalChannel::from_liouville({q}, rs.value(th.values())));
    }
  }
}
