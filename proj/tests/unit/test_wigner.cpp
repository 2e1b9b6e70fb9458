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
#include <sstream>

#include "modvar/wigner.hpp"
#include "oracles.hpp"

namespace modvar {
namespace {

double gaussian_wigner(double x, double p, double vx, double vp, double mx = 0.0, double mp = 0.0) {
  return std::exp(-(x - mx) * (x - mx) / (2.0 * vx) - (p - mp) * (p - mp) / (2.0 * vp)) /
         (2.0 * kPi * std::sqrt(vx * vp));
}

TEST(Wigner, VacuumAndCoherent) {
  const State vac = make_state(StateSpec::vacuum(), 40);
  EXPECT_NEAR(wigner_at(vac, {}), 2.0 / kPi, 1e-14);
  for (cplx g : {cplx(0.3, 0.1), cplx(-1.0, 0.8), cplx(2.5, -2.0)}) {
    EXPECT_NEAR(wigner_at(vac, g), gaussian_wigner(g.real(), g.imag(), 0.25, 0.25), 1e-14);
  }
  const cplx beta(1.2, -0.7);
  const State coh = make_state(StateSpec::coherent(beta), 60);
  for (cplx g : {beta, cplx(0.0, 0.0), cplx(1.5, -1.0)}) {
    EXPECT_NEAR(wigner_at(coh, g), gaussian_wigner(g.real(), g.imag(), 0.25, 0.25, beta.real(), beta.imag()), 1e-12);
  }
}

TEST(Wigner, SqueezedGaussian) {
  const double r = 0.7;
  const State s = make_state(StateSpec::squeezed({r, 0.0}), 120);
  const double vx = std::exp(-2.0 * r) / 4.0, vp = std::exp(2.0 * r) / 4.0;
  for (cplx g : {cplx(0.0, 0.0), cplx(0.2, 0.5), cplx(-0.1, -1.3)}) {
    EXPECT_NEAR(wigner_at(s, g), gaussian_wigner(g.real(), g.imag(), vx, vp), 1e-9);
  }
}

TEST(Wigner, FockStates) {
  // W_n(0) = (2/π)(−1)^n; W_1(γ) = (2/π)(4|γ|² − 1)e^{−2|γ|²}.
  for (int n : {1, 2, 5}) {
    EXPECT_NEAR(wigner_at(make_state(StateSpec::fock(n), 30), {}), (n % 2 ? -2.0 : 2.0) / kPi, 1e-13);
  }
  const State f1 = make_state(StateSpec::fock(1), 30);
  const cplx g(0.4, -0.3);
  EXPECT_NEAR(wigner_at(f1, g), 2.0 / kPi * (4.0 * std::norm(g) - 1.0) * std::exp(-2.0 * std::norm(g)), 1e-14);
}

TEST(Wigner, ThermalState) {
  const double nbar = 0.8;
  const State t = make_state(StateSpec::thermal(nbar), 80);
  const double v = (2.0 * nbar + 1.0) / 4.0;
  EXPECT_NEAR(wigner_at(t, {0.5, 0.2}), gaussian_wigner(0.5, 0.2, v, v), 1e-9);
}

TEST(Wigner, GridIntegralAndMarginal) {
  const State f2 = make_state(StateSpec::fock(2), 30);
  const auto grid = wigner_grid(f2, 4.0, 161, 1);
  EXPECT_NEAR(grid.integral(), 1.0, 1e-6);
  const auto marginal = grid.position_marginal();
  for (std::size_t i = 20; i < grid.x_axis.size(); i += 30) {
    const double psi = oracle::fock_wavefunction(2, grid.x_axis[i]);
    EXPECT_NEAR(marginal[i], psi * psi, 1e-6) << grid.x_axis[i];
  }
}

TEST(Wigner, GridIsThreadIndependent) {
  const State s = make_state(StateSpec::cat({0.0, 2.0}), 60);
  const auto a = wigner_grid(s, 3.0, 41, 1);
  const auto b = wigner_grid(s, 3.0, 41, 3);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NEAR(a.values(20, 30), wigner_at(s, {a.x_axis[20], a.p_axis[30]}), 1e-15);
}

TEST(Wigner, LargeDisplacedCatStaysNormalized) {
  const auto spec = StateSpec::cat({0.0, 9.0}, StateSpec::squeezed({-0.82, 0.0}));
  const State s = make_state(spec, required_dim(spec, 0.0));
  const double ext = default_extent(s);
  EXPECT_LE(ext, 12.0);
  const auto grid = wigner_grid(s, ext, 301);
  EXPECT_NEAR(grid.integral(), 1.0, 1e-3);
}

TEST(Wigner, LobeCenters) {
  const std::vector<ModularSetting> settings{ModularSetting::symmetric({4.0, 0.0}),
                                             ModularSetting::symmetric({0.0, 3.0})};
  const auto centers = symmetric_lobe_centers({cplx{}}, settings);
  ASSERT_EQ(centers.size(), 4u);
  EXPECT_NEAR(max_separation(centers), 5.0, 1e-14);
  for (const auto& c : centers) {
    EXPECT_NEAR(std::abs(c.real()), 2.0, 1e-14);
    EXPECT_NEAR(std::abs(c.imag()), 1.5, 1e-14);
  }
}

TEST(Wigner, CsvAndMetadata) {
  const auto grid = wigner_grid(make_state(StateSpec::vacuum(), 10), 2.0, 5, 1);
  std::ostringstream out;
  write_wigner_csv(out, grid);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "x,p,w");
  const auto meta = wigner_metadata(grid, 10);
  EXPECT_EQ(meta.at("dim"), 10);
}

}  // namespace
}  // namespace modvar
