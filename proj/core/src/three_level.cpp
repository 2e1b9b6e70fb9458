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

#include "modvar/three_level.hpp"

#include <cmath>

#include "modvar/errors.hpp"
#include "modvar/modular.hpp"

namespace modvar {

namespace {

// Levels addressed by transition k, in Pauli order.
std::pair<Level, Level> transition(int k) {
  if (k == 1) return {Level::Down, Level::A};
  if (k == 2) return {Level::Down, Level::Up};
  throw DomainError("transition must be 1 or 2");
}

}  // namespace

ThreeLevelState::ThreeLevelState(Vector amplitudes, int dim) : amps_(std::move(amplitudes)), dim_(dim) {
  if (dim <= 0 || amps_.size() != 3 * dim) throw DomainError("three-level state needs 3·dim amplitudes");
}

ThreeLevelState ThreeLevelState::product(Level level, const PureState& motion) {
  const int n = motion.dim();
  ThreeLevelState s(Vector::Zero(3 * n), n);
  s.level(level) = motion.amplitudes();
  return s;
}

ThreeLevelState apply_rotation(const ThreeLevelState& state, int k, double phi) {
  const auto [first, second] = transition(k);
  // (1 + K)/√2 with K = [[0, e^{−iφ}], [−e^{iφ}, 0]].
  const double r = 1.0 / std::sqrt(2.0);
  const cplx k01 = std::polar(1.0, -phi);
  const cplx k10 = -std::polar(1.0, phi);
  ThreeLevelState out = state;
  const Vector u = state.level(first);
  const Vector v = state.level(second);
  out.level(first) = r * (u + k01 * v);
  out.level(second) = r * (k10 * u + v);
  return out;
}

ThreeLevelState apply_sdf(const ThreeLevelState& state, cplx alpha) {
  const double r = 1.0 / std::sqrt(2.0);
  const Vector down = state.level(Level::Down);
  const Vector up = state.level(Level::Up);
  const Vector plus = apply_displacement(alpha, Vector(r * (down + up)));
  const Vector minus = apply_displacement(-alpha, Vector(r * (down - up)));
  ThreeLevelState out = state;
  out.level(Level::Down) = r * (plus + minus);
  out.level(Level::Up) = r * (plus - minus);
  return out;
}

ThreeLevelState inner_block(const ThreeLevelState& state, cplx alpha) {
  return apply_rotation(apply_sdf(apply_rotation(state, 2, kPi), alpha), 2, 0.0);
}

ThreeLevelState asymmetric_sequence(const PureState& input, cplx alpha, double phi) {
  ThreeLevelState s = ThreeLevelState::product(Level::Down, input);
  s = apply_rotation(s, 1, 0.0);
  s = inner_block(s, alpha);
  return apply_rotation(s, 1, phi);
}

int outcome_of(Level level) {
  switch (level) {
    case Level::A:
      return 1;
    case Level::Down:
      return -1;
    case Level::Up:
      break;
  }
  throw DomainError("|↑> is not a detection outcome of transition 1");
}

ThreeLevelBranches branches(const ThreeLevelState& state) {
  ThreeLevelBranches b;
  const double total = state.amplitudes().squaredNorm();
  b.p_plus = state.population(Level::A) / total;
  b.p_minus = state.population(Level::Down) / total;
  b.p_up = state.population(Level::Up) / total;
  if (b.p_plus >= kDegenerateThreshold) b.post_plus = PureState(state.level(Level::A));
  if (b.p_minus >= kDegenerateThreshold) b.post_minus = PureState(state.level(Level::Down));
  return b;
}

}  // namespace modvar
