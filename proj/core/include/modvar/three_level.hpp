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

#ifndef MODVAR_THREE_LEVEL_HPP
#define MODVAR_THREE_LEVEL_HPP

// Pulse-level model of the asymmetric measurement on {|a>, |↓>, |↑>} ⊗ Fock.
// Transition 1 couples (|↓>, |a>), transition 2 couples (|↓>, |↑>); Pauli
// matrices on each transition use that ordering.

#include <optional>

#include "modvar/states.hpp"

namespace modvar {

enum class Level { A = 0, Down = 1, Up = 2 };

/// Level-major amplitudes: index = level·N + n.
class ThreeLevelState {
 public:
  ThreeLevelState(Vector amplitudes, int dim);
  static ThreeLevelState product(Level level, const PureState& motion);

  int dim() const { return dim_; }
  const Vector& amplitudes() const { return amps_; }
  Vector& amplitudes() { return amps_; }
  auto level(Level l) const { return amps_.segment(static_cast<int>(l) * dim_, dim_); }
  auto level(Level l) { return amps_.segment(static_cast<int>(l) * dim_, dim_); }
  double population(Level l) const { return level(l).squaredNorm(); }
  double norm() const { return amps_.norm(); }

 private:
  Vector amps_;
  int dim_;
};

/// R_k(φ) = (1 − i sin φ σ_{k,x} + i cos φ σ_{k,y})/√2 on transition k ∈ {1, 2}.
ThreeLevelState apply_rotation(const ThreeLevelState& state, int k, double phi);

/// D(α σ_{x,2}): |↓>±|↑> displaced by ±α, |a> untouched. Applied exactly in
/// the σ_x eigenbasis.
ThreeLevelState apply_sdf(const ThreeLevelState& state, cplx alpha);

/// R_2(0) D(α σ_{x,2}) R_2(π): maps |↓>|ψ> to |↓> D(α)|ψ>.
ThreeLevelState inner_block(const ThreeLevelState& state, cplx alpha);

/// R_1(φ) R_2(0) D(α σ_{x,2}) R_2(π) R_1(0) on |↓>|ψ>. The result is
/// −|a> F₊(φ, α)|ψ> − e^{−iφ}|↓> F₋(φ, α)|ψ>.
ThreeLevelState asymmetric_sequence(const PureState& input, cplx alpha, double phi);

/// Detection on transition 1: |a> (dark) reads +1, |↓> (bright) reads −1.
int outcome_of(Level level);

struct ThreeLevelBranches {
  double p_plus = 0.0;   // |a>
  double p_minus = 0.0;  // |↓>
  double p_up = 0.0;     // leakage into |↑>, zero for the ideal sequence
  std::optional<PureState> post_plus;
  std::optional<PureState> post_minus;
};

ThreeLevelBranches branches(const ThreeLevelState& state);

}  // namespace modvar

#endif  // MODVAR_THREE_LEVEL_HPP
