// Copyright 2026 The modvar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "modvar/errors.hpp"
#include "modvar/modular.hpp"
#include "modvar/noise.hpp"

namespace modvar {
namespace {

Matrix low_density(int dim) {
  const State s = make_state(StateSpec::squeezed({0.3, 0.4}), dim);
  return density(s);
}

double low_block_diff(const Matrix& a, const Matrix& b, int k = 25) {
  return (a - b).topLeftCorner(k, k).cwiseAbs().maxCoeff();
}

TEST(Noise, ZeroRateIsExactDisplacement) {
  const int dim = 90;
  const Matrix rho = low_density(dim);
  const cplx alpha(0.9, -0.5);
  const Matrix out = evolve_dephased_block(rho, alpha, 1.0, 0.0, 0.0, 30.0);
  const Matrix d = displacement_matrix(alpha, dim).matrix();
  EXPECT_LT(low_block_diff(out, d * rho), 1e-12);
  const Matrix both = evolve_dephased_block_steps(rho, alpha, 1.0, 1.0, 0.0, 30.0, 40);
  EXPECT_LT(low_block_diff(both, d * rho * d.adjoint()), 1e-10);
}

TEST(Noise, PureDephasingDampsCoherences) {
  // α = 0: X_mn(t) = e^{−2γ(m−n)²t} X_mn.
  const int dim = 30;
  const Matrix rho = low_density(dim);
  const double gamma = 2e-4, t = 50.0;
  const Matrix out = evolve_dephased_block(rho, {}, 1.0, 1.0, gamma, t);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      const cplx expect = rho(m, n) * std::exp(-2.0 * gamma * (m - n) * (m - n) * t);
      EXPECT_LT(std::abs(out(m, n) - expect), 1e-13) << m << "," << n;
    }
  }
}

TEST(Noise, StepDoublingIsConverged) {
  const int dim = 80;
  const Matrix rho = low_density(dim);
  const cplx alpha(1.2, 0.7);
  IntegratorReport report;
  const Matrix a = evolve_dephased_block(rho, alpha, 1.0, 0.0, 30e-6, 46.0, &report);
  EXPECT_GT(report.steps, 0);
  const Matrix b = evolve_dephased_block_steps(rho, alpha, 1.0, 0.0, 30e-6, 46.0, 2 * report.steps);
  EXPECT_LT(low_block_diff(a, b), 1e-12);
  const Matrix ideal = evolve_dephased_block(rho, alpha, 1.0, 0.0, 0.0, 46.0);
  EXPECT_GT(low_block_diff(a, ideal), 1e-5);
}

TEST(Noise, TracePreservedByDisplacedArm) {
  const int dim = 80;
  const Matrix rho = low_density(dim);
  const Matrix out = evolve_dephased_block(rho, {0.8, 0.8}, 1.0, 1.0, 30e-6, 40.0);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-9);
  EXPECT_LT((out - out.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Noise, PhaseSigmaFormula) {
  const NoiseParams p;
  const double t_us = 100.0;
  EXPECT_NEAR(p.phase_sigma(t_us), 665.0 * kPi * 100e-6 / std::sqrt(2.0 * std::log(2.0)) + 0.087, 1e-15);
  EXPECT_NEAR(p.pulse_time_us(3.0), 100.0, 1e-12);
  NoiseParams bad;
  bad.dephasing_rate = -1.0;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = NoiseParams{};
  bad.n_phase_samples = 0;
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Noise, PhaseAverageOfCosineIsGaussianEnvelope) {
  NoiseParams p;
  p.n_phase_samples = 200000;
  const std::vector<double> times{60.0, 20.0};
  const auto avg = qubit_phase_average(
      [](std::span<const double> d) { return std::vector<double>{std::cos(d[0]), std::cos(d[0] + d[1])}; }, times, p,
      17);
  const double s0 = p.phase_sigma(60.0), s1 = p.phase_sigma(20.0);
  EXPECT_NEAR(avg.mean[0], std::exp(-s0 * s0 / 2.0), 5.0 * avg.std_error[0]);
  EXPECT_NEAR(avg.mean[1], std::exp(-(s0 * s0 + s1 * s1) / 2.0), 5.0 * avg.std_error[1]);
  const auto again = qubit_phase_average(
      [](std::span<const double> d) { return std::vector<double>{std::cos(d[0]), std::cos(d[0] + d[1])}; }, times, p,
      17);
  EXPECT_EQ(avg.mean, again.mean);
}

TEST(Noise, NoiselessOutcomeMapIsKraus) {
  const int dim = 90;
  const Matrix rho = low_density(dim);
  const cplx alpha(0.4, 1.1);
  const double phase = 0.7;
  const NoisyAsymmetric m(alpha, phase, NoiseParams::none());
  const auto [kp, km] = kraus_pair(ModularSetting::asymmetric(alpha, phase), dim);
  EXPECT_LT(low_block_diff(m.outcome_map(rho, 1), kp.matrix() * rho * kp.adjoint()), 1e-11);
  EXPECT_LT(low_block_diff(m.outcome_map(rho, -1), km.matrix() * rho * km.adjoint()), 1e-11);
}

TEST(Noise, OutcomeMapsSumToAverageChannel) {
  const int dim = 80;
  const Matrix rho = low_density(dim);
  const NoisyAsymmetric m({1.0, -0.3}, 0.2, NoiseParams{});
  const Matrix sum = m.outcome_map(rho, 1) + m.outcome_map(rho, -1);
  EXPECT_LT((sum - m.average_channel(rho)).cwiseAbs().maxCoeff(), 1e-14);
  const double pp = m.outcome_map(rho, 1).trace().real(), pm = m.outcome_map(rho, -1).trace().real();
  EXPECT_NEAR(pp + pm, 1.0, 1e-9);
  EXPECT_GT(pp, 0.0);
  EXPECT_GT(pm, 0.0);
}

TEST(Noise, SdfLindbladAtZeroRate) {
  const int n = 60;
  const Matrix motion = low_density(n);
  // Qubit in |0> of σ_z; ordering qubit-major.
  Matrix joint = Matrix::Zero(2 * n, 2 * n);
  joint.topLeftCorner(n, n) = motion;
  const cplx target(0.6, 0.3);
  const double delta_phi = 0.8;
  NoiseParams p = NoiseParams::none();
  const MixedState out = evolve_sdf_lindblad(MixedState(joint), target, delta_phi, p);
  const cplx beta = target * std::polar(1.0, -delta_phi / 2.0) / 2.0;
  const Matrix dp = displacement_matrix(beta, n).matrix(), dm = displacement_matrix(-beta, n).matrix();
  // D(β σ_x) = ½(D(β) + D(−β)) ⊗ 1 + ½(D(β) − D(−β)) ⊗ σ_x.
  Matrix u = Matrix::Zero(2 * n, 2 * n);
  u.topLeftCorner(n, n) = u.bottomRightCorner(n, n) = 0.5 * (dp + dm);
  u.topRightCorner(n, n) = u.bottomLeftCorner(n, n) = 0.5 * (dp - dm);
  const Matrix expect = u * joint * u.adjoint();
  for (int qi = 0; qi < 2; ++qi) {
    for (int qj = 0; qj < 2; ++qj) {
      EXPECT_LT(low_block_diff(out.matrix().block(qi * n, qj * n, n, n), expect.block(qi * n, qj * n, n, n), 20),
                1e-9)
          << qi << qj;
    }
  }
}

TEST(Noise, NoiselessLgiMatchesIdeal) {
  LgiSettings s;
  s.amp = 1.0;
  s.theta = {0.0, 1.9, -1.2};
  s.phi = {0.3, -0.4, 1.1};
  const auto point = noisy_lgi_value(s, NoiseParams::none(), 5);
  EXPECT_NEAR(point.noisy.l, point.ideal.l, 1e-9);
  EXPECT_NEAR(point.noisy.ts, point.ideal.ts, 1e-9);
  EXPECT_NEAR(point.ideal.l, lgi_value(s).l, 1e-12);
}

TEST(Noise, NoiseReducesViolation) {
  LgiSettings s;
  s.amp = 2.0;
  const auto opt = optimize_settings(2.0, 0.0, std::nullopt, std::nullopt);
  NoiseParams p;
  p.n_phase_samples = 400;
  const auto point = noisy_lgi_value(opt.settings, p, 11);
  EXPECT_LT(point.noisy.l, point.ideal.l);
  EXPECT_GT(point.l_std_error, 0.0);
  EXPECT_EQ(point.noisy.l, noisy_lgi_value(opt.settings, p, 11).noisy.l);
}

}  // namespace
}  // namespace modvar
