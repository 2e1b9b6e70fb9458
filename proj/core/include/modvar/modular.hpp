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

#ifndef MODVAR_MODULAR_HPP
#define MODVAR_MODULAR_HPP

#include <optional>
#include <utility>

#include "modvar/states.hpp"

namespace modvar {

/// Which Kraus realization of the modular measurement is used.
///   Symmetric:  E±(φ, α) = ½(D(−α/2) ± e^{iφ} D(α/2))
///   Asymmetric: F±(φ, α) = ½(1 ± e^{iφ} D(α))  = D(α/2) E±(φ, α)
/// Both realize the observable Q(φ, α) = cos(φ + 2 Im(α) X − 2 Re(α) P).
enum class Variant { Symmetric, Asymmetric };

const char* variant_name(Variant v);

struct ModularSetting {
  cplx alpha{};
  double phase = 0.0;
  Variant variant = Variant::Symmetric;

  static ModularSetting symmetric(cplx alpha, double phase = 0.0) { return {alpha, phase, Variant::Symmetric}; }
  static ModularSetting asymmetric(cplx alpha, double phase = 0.0) { return {alpha, phase, Variant::Asymmetric}; }

  /// Furthest a branch is pushed from where it started.
  double reach() const { return variant == Variant::Symmetric ? std::abs(alpha) / 2.0 : std::abs(alpha); }
};

/// Branches whose probability falls below this are reported as degenerate.
inline constexpr double kDegenerateThreshold = 1e-12;

/// (K₊, K₋) as dense matrices.
std::pair<OperatorMatrix, OperatorMatrix> kraus_pair(const ModularSetting& setting, int dim);

/// K₊†K₊ − K₋†K₋, the modular observable realized by the setting.
OperatorMatrix modular_observable(const ModularSetting& setting, int dim);

/// K_outcome |ψ> without forming K.
Vector apply_kraus(const ModularSetting& setting, int outcome, const Vector& psi);

struct MeasureResult {
  double p_plus = 0.0;
  double p_minus = 0.0;
  std::optional<State> post_plus;   // empty when the branch is degenerate
  std::optional<State> post_minus;

  double probability(int outcome) const { return outcome > 0 ? p_plus : p_minus; }
  const std::optional<State>& post(int outcome) const { return outcome > 0 ? post_plus : post_minus; }
  bool degenerate(int outcome) const { return !post(outcome).has_value(); }
};

MeasureResult measure_once(const State& state, const ModularSetting& setting);

/// Pre-built Kraus matrices so repeated density-matrix updates reuse them.
class KrausCache {
 public:
  KrausCache(const ModularSetting& setting, int dim);

  const ModularSetting& setting() const { return setting_; }
  const Matrix& kraus(int outcome) const { return outcome > 0 ? plus_ : minus_; }

 private:
  ModularSetting setting_;
  Matrix plus_;
  Matrix minus_;
};

MeasureResult measure_once(const State& state, const KrausCache& cache);

}  // namespace modvar

#endif  // MODVAR_MODULAR_HPP
