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

#ifndef MODVAR_STATES_HPP
#define MODVAR_STATES_HPP

#include <memory>
#include <string>
#include <variant>

#include "modvar/fock.hpp"

namespace modvar {

/// Normalized oscillator state vector.
class PureState {
 public:
  /// Normalizes `amplitudes`; throws DomainError when the norm vanishes.
  explicit PureState(Vector amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Eigen::VectorXd populations() const { return amps_.cwiseAbs2(); }
  double leakage() const { return top_leakage(populations()); }
  Matrix density() const { return amps_ * amps_.adjoint(); }

 private:
  Vector amps_;
};

/// Density matrix, Hermitian with unit trace.
class MixedState {
 public:
  /// Hermitizes and trace-normalizes `rho`; throws DomainError when the trace
  /// is not positive or the input is far from Hermitian.
  explicit MixedState(Matrix rho);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  Eigen::VectorXd populations() const { return rho_.diagonal().real(); }
  double leakage() const { return top_leakage(populations()); }
  double purity() const;
  double min_eigenvalue() const;

 private:
  Matrix rho_;
};

using State = std::variant<PureState, MixedState>;

int state_dim(const State& s);
double leakage(const State& s);
MixedState to_mixed(const State& s);
Matrix density(const State& s);
/// Tr(ρ O).
cplx expectation(const State& s, const Matrix& op);

/// Tagged record describing how to prepare an input state.
struct StateSpec {
  enum class Kind { Vacuum, Fock, Coherent, Squeezed, Thermal, Cat, Gkp };

  Kind kind = Kind::Vacuum;
  int n = 0;             // fock
  cplx alpha{};          // coherent amplitude, cat separation β
  cplx xi{};             // squeezed
  double nbar = 0.0;     // thermal
  double spacing = 0.0;  // gkp
  double envelope = 0.0; // gkp Δ
  std::shared_ptr<const StateSpec> base;  // cat

  static StateSpec vacuum();
  static StateSpec fock(int n);
  static StateSpec coherent(cplx alpha);
  static StateSpec squeezed(cplx xi);
  static StateSpec thermal(double nbar);
  /// Normalized (D(−β/2) + D(β/2)) applied to `base`.
  static StateSpec cat(cplx beta, StateSpec base = vacuum());
  /// Gaussian-envelope comb Σ_l e^{−Δ²(ls)²/2} D(ls) S(−ln Δ)|0>.
  static StateSpec gkp(double spacing, double envelope);

  std::string describe() const;
};

const char* kind_name(StateSpec::Kind k);

/// Reach of a state for truncation planning: phase-space distance from the
/// origin plus the number of quanta the undisplaced core occupies.
struct StateExtent {
  double displacement = 0.0;
  int base_excitation = 0;
};

StateExtent extent(const StateSpec& spec);

/// auto_dim for `spec` followed by displacements totalling `extra_displacement`.
int required_dim(const StateSpec& spec, double extra_displacement, const DimPolicy& policy = {});

/// Builds `spec` in dimension `dim`. Thermal specs (and cats over thermal
/// bases) return MixedState, all others PureState. Throws TruncationError
/// when the result leaks past `policy.leakage_threshold`.
State make_state(const StateSpec& spec, int dim, const DimPolicy& policy = {});

/// m_α = <ψ|D(α)|ψ> or Tr(ρ D(α)).
cplx overlap_matrix(const State& s, cplx alpha);

/// Terms of the finite GKP comb: l ∈ [−L, L] with dropped weight below 1e-6.
int gkp_half_width(double spacing, double envelope);

}  // namespace modvar

#endif  // MODVAR_STATES_HPP
