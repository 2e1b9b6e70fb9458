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

#ifndef MODVAR_CLASSICAL_HPP
#define MODVAR_CLASSICAL_HPP

// Ramsey experiment on a qubit driven by a classical field x(t) = A cos(2π f t)
// whose amplitude A ~ N(A0, σ) is fixed for each shot. The qubit picks up the
// phase A·k with k = ∫ cos(2π f t) dt over the wait window.

#include <cstdint>
#include <vector>

namespace modvar {

struct ClassicalFieldParams {
  double a0 = 0.0;
  double sigma = 0.0;
  double frequency = 50.0;  // Hz
  double wait = 0.0;        // T, s
  double phase = 0.0;       // second Ramsey pulse, rad
  double start = 0.0;       // window start t₀, s

  void validate() const;
  /// ∫_{t₀}^{t₀+T} cos(2π f t) dt.
  double window_integral() const;
};

/// ⟨Q⟩ = −e^{−½(kσ)²} cos(φ + k A0), the Gaussian average of −cos(φ + kA).
double classical_q_expect(const ClassicalFieldParams& p);

/// Sample mean of −cos(φ + kA) over `samples` amplitude draws.
double classical_q_expect_mc(const ClassicalFieldParams& p, std::uint64_t samples, std::uint64_t seed);

/// P(+1) = ½(1 + ⟨Q⟩).
double classical_p_plus(const ClassicalFieldParams& p);

struct ClassicalTracePoint {
  double wait = 0.0;
  double q = 0.0;
};

/// ⟨Q⟩ over `points` wait times evenly spaced in [0, t_max].
std::vector<ClassicalTracePoint> classical_trace(ClassicalFieldParams p, double t_max, int points);

enum class ClassicalMode { Analytic, MonteCarlo };

/// S = P_B(+1) − P_{B(A)}(+1) for two Ramsey measurements sharing the shot's A.
/// The first measurement leaves the field untouched, so S vanishes.
double classical_sequential_sit(const ClassicalFieldParams& first, const ClassicalFieldParams& second,
                                ClassicalMode mode, std::uint64_t shots = 1000000, std::uint64_t seed = 1);

}  // namespace modvar

#endif  // MODVAR_CLASSICAL_HPP
