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

#include <random>

#include "modvar/modular.hpp"
#include "modvar/three_level.hpp"

namespace modvar {
namespace {

PureState motion(int dim) { return std::get<PureState>(make_state(StateSpec::cat({0.0, 1.2}), dim)); }

double fidelity(const Vector& a, const Vector& b) { return std::norm(a.normalized().dot(b.normalized())); }

TEST(ThreeLevel, RotationsAndSdfAreUnitary) {
  const int dim = 60;
  const auto s = ThreeLevelState::product(Level::Down, motion(dim));
  EXPECT_NEAR(apply_rotation(s, 1, 0.7).norm(), 1.0, 1e-13);
  EXPECT_NEAR(apply_rotation(s, 2, -1.3).norm(), 1.0, 1e-13);
  EXPECT_NEAR(apply_sdf(apply_rotation(s, 2, 0.0), {0.5, 0.5}).norm(), 1.0, 1e-9);
}

TEST(ThreeLevel, RotationIsHalfPulse) {
  const int dim = 4;
  const auto s = ThreeLevelState::product(Level::Down, PureState(Vector::Unit(dim, 0)));
  const auto r1 = apply_rotation(s, 1, 0.3);
  EXPECT_NEAR(r1.population(Level::A), 0.5, 1e-14);
  EXPECT_NEAR(r1.population(Level::Down), 0.5, 1e-14);
  EXPECT_NEAR(r1.population(Level::Up), 0.0, 1e-14);
  const auto r2 = apply_rotation(s, 2, 0.3);
  EXPECT_NEAR(r2.population(Level::Up), 0.5, 1e-14);
  EXPECT_NEAR(r2.population(Level::A), 0.0, 1e-14);
}

TEST(ThreeLevel, InnerBlockDisplacesDownLevel) {
  const int dim = 80;
  const PureState psi = motion(dim);
  const cplx alpha(0.8, -0.6);
  const auto out = inner_block(ThreeLevelState::product(Level::Down, psi), alpha);
  EXPECT_NEAR(out.population(Level::Down), 1.0, 1e-12);
  const Vector expect = apply_displacement(alpha, psi.amplitudes());
  EXPECT_LT((Vector(out.level(Level::Down)) - expect).norm(), 1e-10);
}

TEST(ThreeLevel, SequenceReproducesAsymmetricKraus) {
  const int dim = 90;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.5, 1.5), ph(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx alpha(u(rng), u(rng));
    const double phi = ph(rng);
    const PureState psi = motion(dim);
    const auto b = branches(asymmetric_sequence(psi, alpha, phi));
    const auto k = measure_once(State(psi), ModularSetting::asymmetric(alpha, phi));
    EXPECT_NEAR(b.p_plus, k.p_plus, 1e-10);
    EXPECT_NEAR(b.p_minus, k.p_minus, 1e-10);
    EXPECT_NEAR(b.p_up, 0.0, 1e-14);
    ASSERT_TRUE(b.post_plus && k.post_plus);
    EXPECT_NEAR(fidelity(b.post_plus->amplitudes(), std::get<PureState>(*k.post_plus).amplitudes()), 1.0, 1e-10);
    ASSERT_TRUE(b.post_minus && k.post_minus);
    EXPECT_NEAR(fidelity(b.post_minus->amplitudes(), std::get<PureState>(*k.post_minus).amplitudes()), 1.0, 1e-10);
  }
}

TEST(ThreeLevel, DetectionLabels) {
  EXPECT_EQ(outcome_of(Level::A), 1);
  EXPECT_EQ(outcome_of(Level::Down), -1);
}

}  // namespace
}  // namespace modvar
