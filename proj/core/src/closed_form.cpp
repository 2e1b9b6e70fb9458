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

#include "modvar/closed_form.hpp"

#include <cmath>

#include "modvar/errors.hpp"

namespace modvar {

namespace {

// Distance of x from the nearest multiple of `period`.
double off_lattice(double x, double period) {
  const double k = std::round(x / period);
  return std::abs(x - k * period);
}

}  // namespace

double geometric_phase(cplx alpha_a, cplx alpha_b) { return (std::conj(alpha_a) * alpha_b).imag(); }

cplx gaussian_overlap(cplx alpha, double nbar, cplx xi, cplx mean) {
  if (nbar < 0) throw DomainError("nbar must be non-negative");
  const double r = std::abs(xi);
  const double theta = std::arg(xi);
  const cplx a = alpha * std::cosh(r) + std::conj(alpha) * std::polar(1.0, theta) * std::sinh(r);
  const double gauss = std::exp(-std::norm(a) * (2.0 * nbar + 1.0) / 2.0);
  return gauss * std::polar(1.0, 2.0 * (alpha * std::conj(mean)).imag());
}

double single_probability(double phase, OverlapValue m_alpha) {
  return 0.5 * (1.0 + m_alpha.magnitude * std::cos(phase + m_alpha.phase));
}

double sit_symmetric(cplx alpha_a, cplx alpha_b, OverlapValue m_b, double phase_b) {
  const double phi = geometric_phase(alpha_a, alpha_b);
  return 0.5 * (1.0 - std::cos(phi)) * m_b.magnitude * std::cos(phase_b + m_b.phase);
}

double sit_asymmetric(cplx alpha_a, cplx alpha_b, double phase_b, OverlapValue m_b) {
  const double phi = geometric_phase(alpha_a, alpha_b);
  return 0.5 * std::sin(phi) * m_b.magnitude * std::sin(phi + phase_b + m_b.phase);
}

double corr_symmetric(OverlapValue m_minus, OverlapValue m_plus, double phase_a, double phase_b) {
  return 0.5 * (m_minus.magnitude * std::cos(phase_a - phase_b + m_minus.phase) +
                m_plus.magnitude * std::cos(phase_a + phase_b + m_plus.phase));
}

double corr_asymmetric(cplx alpha_a, cplx alpha_b, double phase_a, double phase_b, OverlapValue m_minus,
                       OverlapValue m_plus) {
  const double phi = geometric_phase(alpha_a, alpha_b);
  return 0.5 * (m_minus.magnitude * std::cos(phase_a - phase_b - phi + m_minus.phase) +
                m_plus.magnitude * std::cos(phase_a + phase_b + phi + m_plus.phase));
}

NsitConditions nsit_conditions(cplx alpha_a, cplx alpha_b, double tol) {
  const double phi = geometric_phase(alpha_a, alpha_b);
  NsitConditions c;
  c.symmetric_nsit = off_lattice(phi, 2.0 * kPi) <= tol;
  c.asymmetric_nsit = off_lattice(phi, kPi) <= tol;
  c.observables_commute = c.asymmetric_nsit;
  return c;
}

double classical_fidelity(const std::array<double, 2>& p, const std::array<double, 2>& q) {
  double k = 0.0;
  for (int i = 0; i < 2; ++i) {
    if (p[i] < -1e-12 || q[i] < -1e-12) throw DomainError("probabilities must be non-negative");
    k += std::sqrt(std::max(0.0, p[i]) * std::max(0.0, q[i]));
  }
  return std::min(1.0, k);
}

}  // namespace modvar
