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

#include "modvar/modular.hpp"

#include <algorithm>

#include "modvar/errors.hpp"

namespace modvar {

const char* variant_name(Variant v) { return v == Variant::Symmetric ? "symmetric" : "asymmetric"; }

namespace {

void check_outcome(int outcome) {
  if (outcome != 1 && outcome != -1) throw DomainError("measurement outcome must be +1 or -1");
}

std::pair<Matrix, Matrix> build_kraus(const ModularSetting& s, int dim) {
  const cplx phase = std::polar(1.0, s.phase);
  Matrix base, shifted;
  if (s.variant == Variant::Symmetric) {
    base = displacement_matrix(-s.alpha / 2.0, dim).matrix();
    shifted = phase * displacement_matrix(s.alpha / 2.0, dim).matrix();
  } else {
    base = Matrix::Identity(dim, dim);
    shifted = phase * displacement_matrix(s.alpha, dim).matrix();
  }
  return {0.5 * (base + shifted), 0.5 * (base - shifted)};
}

MeasureResult finish(double p_plus, double p_minus, auto&& make_plus, auto&& make_minus) {
  MeasureResult r;
  r.p_plus = std::clamp(p_plus, 0.0, 1.0);
  r.p_minus = std::clamp(p_minus, 0.0, 1.0);
  if (p_plus >= kDegenerateThreshold) r.post_plus = make_plus();
  if (p_minus >= kDegenerateThreshold) r.post_minus = make_minus();
  return r;
}

}  // namespace

std::pair<OperatorMatrix, OperatorMatrix> kraus_pair(const ModularSetting& setting, int dim) {
  auto [plus, minus] = build_kraus(setting, dim);
  return {OperatorMatrix(std::move(plus)), OperatorMatrix(std::move(minus))};
}

OperatorMatrix modular_observable(const ModularSetting& setting, int dim) {
  const Matrix u = std::polar(1.0, setting.phase) * displacement_matrix(setting.alpha, dim).matrix();
  return OperatorMatrix(0.5 * (u + u.adjoint()));
}

Vector apply_kraus(const ModularSetting& setting, int outcome, const Vector& psi) {
  check_outcome(outcome);
  const cplx sign_phase = static_cast<double>(outcome) * std::polar(1.0, setting.phase);
  if (setting.variant == Variant::Symmetric) {
    return 0.5 * (apply_displacement(-setting.alpha / 2.0, psi) +
                  sign_phase * apply_displacement(setting.alpha / 2.0, psi));
  }
  return 0.5 * (psi + sign_phase * apply_displacement(setting.alpha, psi));
}

KrausCache::KrausCache(const ModularSetting& setting, int dim) : setting_(setting) {
  std::tie(plus_, minus_) = build_kraus(setting, dim);
}

MeasureResult measure_once(const State& state, const KrausCache& cache) {
  if (const auto* p = std::get_if<PureState>(&state)) {
    Vector vp = cache.kraus(1) * p->amplitudes();
    Vector vm = cache.kraus(-1) * p->amplitudes();
    const double pp = vp.squaredNorm(), pm = vm.squaredNorm();
    return finish(pp, pm, [&] { return State(PureState(std::move(vp))); },
                  [&] { return State(PureState(std::move(vm))); });
  }
  const Matrix& rho = std::get<MixedState>(state).matrix();
  Matrix rp = cache.kraus(1) * rho * cache.kraus(1).adjoint();
  Matrix rm = cache.kraus(-1) * rho * cache.kraus(-1).adjoint();
  const double pp = rp.trace().real(), pm = rm.trace().real();
  return finish(pp, pm, [&] { return State(MixedState(std::move(rp))); },
                [&] { return State(MixedState(std::move(rm))); });
}

MeasureResult measure_once(const State& state, const ModularSetting& setting) {
  if (const auto* p = std::get_if<PureState>(&state)) {
    Vector vp = apply_kraus(setting, 1, p->amplitudes());
    Vector vm = apply_kraus(setting, -1, p->amplitudes());
    const double pp = vp.squaredNorm(), pm = vm.squaredNorm();
    return finish(pp, pm, [&] { return State(PureState(std::move(vp))); },
                  [&] { return State(PureState(std::move(vm))); });
  }
  return measure_once(state, KrausCache(setting, state_dim(state)));
}

}  // namespace modvar
