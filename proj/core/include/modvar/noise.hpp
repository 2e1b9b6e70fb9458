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

#ifndef MODVAR_NOISE_HPP
#define MODVAR_NOISE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "modvar/lgi.hpp"

namespace modvar {

/// Motional dephasing during SDF pulses and quasi-static qubit phase noise.
struct NoiseParams {
  double dephasing_rate = 30.0;      // s⁻¹, collapse operator √rate·(a a† + a† a)
  double linewidth_fwhm = 665.0;     // Hz
  double phase_offset = 0.087;       // rad, added to σ
  int n_phase_samples = 4000;
  double sdf_time_per_unit = 1.0 / 0.030;  // µs per unit |α|

  static NoiseParams none() { return {0.0, 0.0, 0.0, 1, 1.0 / 0.030}; }
  void validate() const;
  double pulse_time_us(double displacement) const { return std::abs(displacement) * sdf_time_per_unit; }
  /// σ = l π t / √(2 ln 2) + offset, t in seconds.
  double phase_sigma(double t_us) const;
};

struct IntegratorReport {
  int steps = 0;  // zero when the exact displacement was used
  double max_change = 0.0;
};

/// Solves dX/dt = −i(k_l G X − k_r X G) + γ(L X L − ½{L², X}) for `t_us`
/// with G = i(α a† − α* a)/t and L = 2n + 1, so that at γ = 0 the result is
/// D(k_l α) X D(k_r α)†. The generator is constant, so each sub-step applies
/// its exponential as a Taylor series summed to machine precision.
Matrix evolve_dephased_block(const Matrix& x, cplx alpha, double k_left, double k_right, double rate_per_us,
                             double t_us, IntegratorReport* report = nullptr);

/// Same evolution with an explicit sub-step count (for convergence checks).
Matrix evolve_dephased_block_steps(const Matrix& x, cplx alpha, double k_left, double k_right, double rate_per_us,
                                   double t_us, int steps);

/// Qubit ⊗ oscillator density matrix (qubit-major, dimension 2N) evolved
/// under the SDF Hamiltonian for t = |α|/c plus motional dephasing. At zero
/// rate the result is D(α' σ_x/2) ρ D(α' σ_x/2)† with α' = α e^{−iΔφ/2}.
MixedState evolve_sdf_lindblad(const MixedState& joint, cplx alpha_target, double delta_phi,
                               const NoiseParams& params, IntegratorReport* report = nullptr);

struct PhaseAverage {
  std::vector<double> mean;
  std::vector<double> std_error;
};

/// Averages `experiment(offsets)` over Gaussian phase offsets, one per pulse,
/// with σ from each pulse time. Deterministic per seed.
PhaseAverage qubit_phase_average(const std::function<std::vector<double>(std::span<const double>)>& experiment,
                                 std::span<const double> t_sdf_us, const NoiseParams& params, std::uint64_t seed);

/// Asymmetric measurement with dephasing during its pulse. The displaced arm
/// moves along α over the pulse time; the undisplaced arm only dephases.
class NoisyAsymmetric {
 public:
  NoisyAsymmetric(cplx alpha, double phase, const NoiseParams& params);

  /// ½(Λ₀₀ + Λ₁₁)(ρ): the state after the measurement with outcomes discarded.
  Matrix average_channel(const Matrix& rho) const;
  /// Λ₁₀(ρ), the coherence between displaced and undisplaced arms.
  Matrix coherence(const Matrix& rho) const;
  /// Tr Λ₁₀(X), the only part of a later measurement a trace needs.
  cplx coherence_trace(const Matrix& x) const;
  /// Outcome map M_s(ρ) = ¼[Λ₀₀ + Λ₁₁ + s e^{iφ}Λ₁₀ + s e^{−iφ}Λ₀₁](ρ) at phase φ + δ.
  Matrix outcome_map(const Matrix& rho, int outcome, double delta = 0.0) const;

  cplx alpha() const { return alpha_; }
  double phase() const { return phase_; }
  double pulse_time_us() const { return t_us_; }

 private:
  cplx alpha_;
  double phase_;
  double rate_;  // per µs
  double t_us_;
};

struct NoisyLgiPoint {
  double amp = 0.0;
  LgiResult ideal;
  LgiResult noisy;
  double l_std_error = 0.0;
  int dim = 0;
};

/// Correlators and forward S̃ of the three pairs with dephasing and
/// phase averaging at fixed settings.
NoisyLgiPoint noisy_lgi_value(const LgiSettings& settings, const NoiseParams& params, std::uint64_t seed,
                              const DimPolicy& policy = {});

std::vector<NoisyLgiPoint> noisy_lgi_curve(std::span<const OptimizeResult> settings, const NoiseParams& params,
                                           std::uint64_t seed, const DimPolicy& policy = {});

}  // namespace modvar

#endif  // MODVAR_NOISE_HPP
