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

#include "modvar/classical.hpp"

#include <cmath>
#include <random>

#include "modvar/errors.hpp"
#include "modvar/fock.hpp"

namespace modvar {

namespace {

// E[cos(c + kA)] for A ~ N(A0, σ).
double mean_cos(double c, double k, double a0, double sigma) {
  return std::exp(-0.5 * (k * sigma) * (k * sigma)) * std::cos(c + k * a0);
}

}  // namespace

void ClassicalFieldParams::validate() const {
  if (!(sigma >= 0)) throw DomainError("sigma must be non-negative");
  if (!(frequency > 0)) throw DomainError("frequency must be positive");
  if (!(wait >= 0)) throw DomainError("wait time must be non-negative");
}

double ClassicalFieldParams::window_integral() const {
  const double w = 2.0 * kPi * frequency;
  return (std::sin(w * (start + wait)) - std::sin(w * start)) / w;
}

double classical_q_expect(const ClassicalFieldParams& p) {
  p.validate();
  return -mean_cos(p.phase, p.window_integral(), p.a0, p.sigma);
}

double classical_q_expect_mc(const ClassicalFieldParams& p, std::uint64_t samples, std::uint64_t seed) {
  p.validate();
  if (samples == 0) throw DomainError("need at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> amp(p.a0, p.sigma);
  const double k = p.window_integral();
  double sum = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) sum += -std::cos(p.phase + k * amp(rng));
  return sum / static_cast<double>(samples);
}

double classical_p_plus(const ClassicalFieldParams& p) { return 0.5 * (1.0 + classical_q_expect(p)); }

std::vector<ClassicalTracePoint> classical_trace(ClassicalFieldParams p, double t_max, int points) {
  if (points < 2) throw DomainError("trace needs at least two points");
  std::vector<ClassicalTracePoint> out;
  for (int i = 0; i < points; ++i) {
    p.wait = t_max * i / (points - 1);
    out.push_back({p.wait, classical_q_expect(p)});
  }
  return out;
}

double classical_sequential_sit(const ClassicalFieldParams& first, const ClassicalFieldParams& second,
                                ClassicalMode mode, std::uint64_t shots, std::uint64_t seed) {
  first.validate();
  second.validate();
  if (first.a0 != second.a0 || first.sigma != second.sigma || first.frequency != second.frequency) {
    throw DomainError("both measurements must see the same field");
  }
  const double ka = first.window_integral();
  const double kb = second.window_integral();
  if (mode == ClassicalMode::Analytic) {
    // q_X(A) = −cos(φ_X + k_X A); P(a, +) = ¼ E[(1 + a q_A)(1 + q_B)].
    const double a0 = first.a0;
    const double s = first.sigma;
    const double eqa = -mean_cos(first.phase, ka, a0, s);
    const double eqb = -mean_cos(second.phase, kb, a0, s);
    // cos x cos y = ½[cos(x + y) + cos(x − y)]
    const double eqab = 0.5 * (mean_cos(first.phase + second.phase, ka + kb, a0, s) +
                               mean_cos(first.phase - second.phase, ka - kb, a0, s));
    const double p_alone = 0.5 * (1.0 + eqb);
    double p_after = 0.0;
    for (int a : {1, -1}) p_after += 0.25 * (1.0 + a * eqa + eqb + a * eqab);
    return p_alone - p_after;
  }
  if (shots == 0) throw DomainError("need at least one shot");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> amp(first.a0, first.sigma);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto p_plus = [](double phase, double k, double a) { return 0.5 * (1.0 - std::cos(phase + k * a)); };
  std::uint64_t alone = 0;
  std::uint64_t after = 0;
  for (std::uint64_t i = 0; i < shots; ++i) {
    // B alone.
    const double a1 = amp(rng);
    if (u(rng) < p_plus(second.phase, kb, a1)) ++alone;
    // A then B on a fresh shot; A's outcome is drawn but changes nothing.
    const double a2 = amp(rng);
    (void)(u(rng) < p_plus(first.phase, ka, a2));
    if (u(rng) < p_plus(second.phase, kb, a2)) ++after;
  }
  return (static_cast<double>(alone) - static_cast<double>(after)) / static_cast<double>(shots);
}

}  // namespace modvar
