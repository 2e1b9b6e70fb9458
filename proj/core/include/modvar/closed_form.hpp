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

#ifndef MODVAR_CLOSED_FORM_HPP
#define MODVAR_CLOSED_FORM_HPP

// Analytic predictions for single and sequential modular measurements.
// Every formula is written in terms of the characteristic function
// m_α = Tr(ρ D(α)) of the input state, so mixed inputs use the same code.

#include <array>

#include "modvar/fock.hpp"

namespace modvar {

struct OverlapValue {
  double magnitude = 1.0;
  double phase = 0.0;

  static OverlapValue from(cplx m) { return {std::abs(m), std::arg(m)}; }
  cplx value() const { return std::polar(magnitude, phase); }
};

/// Φ = Im(α_A* α_B). With this sign D(α_B) D(α_A) = e^{iΦ} D(α_A + α_B).
double geometric_phase(cplx alpha_a, cplx alpha_b);

/// Characteristic function of D(μ) S(ξ) ρ_th(n̄) S(ξ)† D(μ)†.
cplx gaussian_overlap(cplx alpha, double nbar = 0.0, cplx xi = {}, cplx mean = {});

/// P(+1) of a single measurement: ½(1 + Re(e^{iφ} m_α)). Same for both variants.
double single_probability(double phase, OverlapValue m_alpha);

/// S = P_B(+1) − P_{B(A)}(+1) for two symmetric measurements.
/// ½(1 − cos Φ)|m_B| cos(φ_B + arg m_B); φ_A drops out.
double sit_symmetric(cplx alpha_a, cplx alpha_b, OverlapValue m_b, double phase_b = 0.0);

/// S̃ for two asymmetric measurements: ½ sin Φ |m_B| sin(Φ + φ_B + arg m_B).
double sit_asymmetric(cplx alpha_a, cplx alpha_b, double phase_b, OverlapValue m_b);

/// C = ½(|m₋| cos(φ_A − φ_B + arg m₋) + |m₊| cos(φ_A + φ_B + arg m₊)),
/// m∓ = m_{α_A ∓ α_B}. Independent of Φ.
double corr_symmetric(OverlapValue m_minus, OverlapValue m_plus, double phase_a = 0.0, double phase_b = 0.0);

/// C̃ = ½(|m₋| cos(φ_A − φ_B − Φ + arg m₋) + |m₊| cos(φ_A + φ_B + Φ + arg m₊)).
double corr_asymmetric(cplx alpha_a, cplx alpha_b, double phase_a, double phase_b, OverlapValue m_minus,
                       OverlapValue m_plus);

struct NsitConditions {
  bool symmetric_nsit = false;      // Φ = 2πk
  bool asymmetric_nsit = false;     // Φ = πk
  bool observables_commute = false; // Φ = πk; odd k still leaves symmetric SIT
};

NsitConditions nsit_conditions(cplx alpha_a, cplx alpha_b, double tol = 1e-9);

/// κ = Σ_b √(p(b) q(b)).
double classical_fidelity(const std::array<double, 2>& p, const std::array<double, 2>& q);

}  // namespace modvar

#endif  // MODVAR_CLOSED_FORM_HPP
