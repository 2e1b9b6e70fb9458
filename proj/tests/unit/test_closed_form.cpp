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

#include "modvar/branch_tree.hpp"
#include "modvar/closed_form.hpp"
#include "modvar/errors.hpp"

namespace modvar {
namespace {

struct Case {
  const char* name;
  StateSpec spec;
};

std::vector<Case> inputs() {
  return {{"vacuum", StateSpec::vacuum()},
          {"squeezed", StateSpec::squeezed({0.5, -0.3})},
          {"thermal", StateSpec::thermal(0.4)},
          {"coherent", StateSpec::coherent({0.6, -0.4})},
          {"fock", StateSpec::fock(2)},
          {"cat", StateSpec::cat({0.0, 2.2}, StateSpec::squeezed({0.3, 0.0}))}};
}

double closed_corr(const State& s, const ModularSetting& a, const ModularSetting& b) {
  const auto mm = OverlapValue::from(overlap_matrix(s, a.alpha - b.alpha));
  const auto mp = OverlapValue::from(overlap_matrix(s, a.alpha + b.alpha));
  return a.variant == Variant::Symmetric ? corr_symmetric(mm, mp, a.phase, b.phase)
                                         : corr_asymmetric(a.alpha, b.alpha, a.phase, b.phase, mm, mp);
}

TEST(ClosedForm, RandomPairsMatchBranchEngine) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(-1.6, 1.6), ph(-kPi, kPi);
  for (const auto& c : inputs()) {
    for (int trial = 0; trial < 6; ++trial) {
      const cplx aa(u(rng), u(rng)), ab(u(rng), u(rng));
      for (auto variant : {Variant::Symmetric, Variant::Asymmetric}) {
        const ModularSetting a{aa, ph(rng), variant}, b{ab, ph(rng), variant};
        const int dim = required_dim(c.spec, a.reach() + b.reach());
        const State s = make_state(c.spec, dim);
        const auto m = measure_sit(s, a, b);
        const auto mb = OverlapValue::from(overlap_matrix(s, b.alpha));
        const double closed = variant == Variant::Symmetric ? sit_symmetric(a.alpha, b.alpha, mb, b.phase)
                                                            : sit_asymmetric(a.alpha, b.alpha, b.phase, mb);
        EXPECT_NEAR(m.sit, closed, 1e-10) << c.name << " " << variant_name(variant);
        EXPECT_NEAR(m.correlator, closed_corr(s, a, b), 1e-10) << c.name << " " << variant_name(variant);
      }
    }
  }
}

TEST(ClosedForm, GaussianOverlapMatchesMatrix) {
  const int dim = 120;
  const cplx alpha(0.8, -1.1);
  EXPECT_NEAR(std::abs(gaussian_overlap(alpha) - overlap_matrix(make_state(StateSpec::vacuum(), dim), alpha)), 0.0,
              1e-13);
  EXPECT_NEAR(std::abs(gaussian_overlap(alpha, 0.7) - overlap_matrix(make_state(StateSpec::thermal(0.7), dim), alpha)),
              0.0, 1e-12);
  const cplx xi(0.6, 0.9);
  EXPECT_NEAR(std::abs(gaussian_overlap(alpha, 0.0, xi) - overlap_matrix(make_state(StateSpec::squeezed(xi), dim), alpha)),
              0.0, 1e-10);
  const cplx beta(0.9, 0.4);
  EXPECT_NEAR(std::abs(gaussian_overlap(alpha, 0.0, {}, beta) -
                       overlap_matrix(make_state(StateSpec::coherent(beta), dim), alpha)),
              0.0, 1e-12);
}

TEST(ClosedForm, SymmetricSitVanishesOnFullTurns) {
  // Φ = Im(ᾱ_A α_B) = 2π: symmetric NSIT for any input.
  const cplx aa(std::sqrt(2.0 * kPi), 0.0), ab(0.3, std::sqrt(2.0 * kPi));
  EXPECT_TRUE(nsit_conditions(aa, ab).symmetric_nsit);
  const State s = make_state(StateSpec::cat({1.5, 0.0}, StateSpec::fock(1)),
                             required_dim(StateSpec::cat({1.5, 0.0}, StateSpec::fock(1)), 4.0));
  EXPECT_NEAR(measure_sit(s, ModularSetting::symmetric(aa), ModularSetting::symmetric(ab, 0.7)).sit, 0.0, 1e-10);
  EXPECT_NEAR(measure_sit(s, ModularSetting::asymmetric(aa), ModularSetting::asymmetric(ab, 0.7)).sit, 0.0, 1e-10);
}

TEST(ClosedForm, AsymmetricSitVanishesOnHalfTurns) {
  const cplx aa(0.0, std::sqrt(kPi)), ab(-std::sqrt(kPi), 0.0);
  EXPECT_NEAR(geometric_phase(aa, ab), kPi, 1e-12);
  const auto c = nsit_conditions(aa, ab);
  EXPECT_TRUE(c.asymmetric_nsit);
  EXPECT_TRUE(c.observables_commute);
  EXPECT_FALSE(c.symmetric_nsit);
  const State s = make_state(StateSpec::squeezed({-0.4, 0.0}), 120);
  EXPECT_NEAR(measure_sit(s, ModularSetting::asymmetric(aa), ModularSetting::asymmetric(ab, 0.2)).sit, 0.0, 1e-10);
  // The symmetric pair still disturbs: S = |m_B| cos(φ_B + arg m_B).
  const auto mb = OverlapValue::from(overlap_matrix(s, ab));
  EXPECT_NEAR(measure_sit(s, ModularSetting::symmetric(aa), ModularSetting::symmetric(ab, 0.2)).sit,
              mb.magnitude * std::cos(0.2 + mb.phase), 1e-10);
}

TEST(ClosedForm, GeometricPhaseOrdering) {
  const cplx aa(0.7, -0.2), ab(-0.4, 1.3);
  const Matrix lhs = displacement_matrix(ab, 150).matrix() * displacement_matrix(aa, 150).matrix();
  const Matrix rhs = std::polar(1.0, geometric_phase(aa, ab)) * displacement_matrix(aa + ab, 150).matrix();
  EXPECT_LT((lhs - rhs).topLeftCorner(30, 30).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(ClosedForm, ClassicalFidelity) {
  EXPECT_DOUBLE_EQ(classical_fidelity({0.3, 0.7}, {0.3, 0.7}), 1.0);
  EXPECT_NEAR(classical_fidelity({1.0, 0.0}, {0.0, 1.0}), 0.0, 1e-15);
  EXPECT_NEAR(classical_fidelity({0.5, 0.5}, {0.9, 0.1}), std::sqrt(0.45) + std::sqrt(0.05), 1e-15);
  EXPECT_THROW(classical_fidelity({-0.1, 1.1}, {0.5, 0.5}), DomainError);
}

TEST(ClosedForm, KappaBelowOneWhenDisturbed) {
  const State s = make_state(StateSpec::vacuum(), 60);
  const auto m = measure_sit(s, ModularSetting::symmetric({0.0, 2.0}), ModularSetting::symmetric({1.5, 0.0}));
  EXPECT_GT(std::abs(m.sit), 1e-3);
  EXPECT_LT(m.kappa, 1.0);
}

}  // namespace
}  // namespace modvar
