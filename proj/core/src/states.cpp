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

#include "modvar/states.hpp"

#include <cmath>
#include <sstream>

#include "modvar/errors.hpp"

namespace modvar {

namespace {

// Quanta needed before the photon-number tail of S(r)|0> drops below 1e-14.
int squeeze_excitation(double r) {
  if (r < 1e-12) return 0;
  const double t = std::tanh(r);
  const double k = std::log(1e-14) / (2.0 * std::log(t));
  return 2 * static_cast<int>(std::ceil(k));
}

int thermal_excitation(double nbar) {
  if (nbar <= 0) return 0;
  const double q = nbar / (1.0 + nbar);
  return static_cast<int>(std::ceil(std::log(1e-14) / std::log(q)));
}

Vector ground(int dim) {
  Vector v = Vector::Zero(dim);
  v(0) = 1.0;
  return v;
}

}  // namespace

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  const double norm = amps_.norm();
  if (!(norm > 1e-300) || !std::isfinite(norm)) throw DomainError("state vector has zero or non-finite norm");
  amps_ /= norm;
}

MixedState::MixedState(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) throw DomainError("density matrix must be square");
  const double scale = std::max(1.0, rho_.cwiseAbs().maxCoeff());
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-6 * scale) {
    throw DomainError("density matrix is not Hermitian");
  }
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  const double tr = rho_.trace().real();
  if (!(tr > 1e-300)) throw DomainError("density matrix has non-positive trace");
  rho_ /= tr;
}

double MixedState::purity() const { return (rho_ * rho_).trace().real(); }

double MixedState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

int state_dim(const State& s) {
  return std::visit([](const auto& x) { return x.dim(); }, s);
}

double leakage(const State& s) {
  return std::visit([](const auto& x) { return x.leakage(); }, s);
}

Matrix density(const State& s) {
  if (const auto* p = std::get_if<PureState>(&s)) return p->density();
  return std::get<MixedState>(s).matrix();
}

MixedState to_mixed(const State& s) { return MixedState(density(s)); }

cplx expectation(const State& s, const Matrix& op) {
  if (const auto* p = std::get_if<PureState>(&s)) {
    return p->amplitudes().dot(op * p->amplitudes());
  }
  return (std::get<MixedState>(s).matrix() * op).trace();
}

StateSpec StateSpec::vacuum() { return {}; }

StateSpec StateSpec::fock(int n) {
  StateSpec s;
  s.kind = Kind::Fock;
  s.n = n;
  return s;
}

StateSpec StateSpec::coherent(cplx alpha) {
  StateSpec s;
  s.kind = Kind::Coherent;
  s.alpha = alpha;
  return s;
}

StateSpec StateSpec::squeezed(cplx xi) {
  StateSpec s;
  s.kind = Kind::Squeezed;
  s.xi = xi;
  return s;
}

StateSpec StateSpec::thermal(double nbar) {
  StateSpec s;
  s.kind = Kind::Thermal;
  s.nbar = nbar;
  return s;
}

StateSpec StateSpec::cat(cplx beta, StateSpec base) {
  StateSpec s;
  s.kind = Kind::Cat;
  s.alpha = beta;
  s.base = std::make_shared<const StateSpec>(std::move(base));
  return s;
}

StateSpec StateSpec::gkp(double spacing, double envelope) {
  StateSpec s;
  s.kind = Kind::Gkp;
  s.spacing = spacing;
  s.envelope = envelope;
  return s;
}

const char* kind_name(StateSpec::Kind k) {
  switch (k) {
    case StateSpec::Kind::Vacuum: return "vacuum";
    case StateSpec::Kind::Fock: return "fock";
    case StateSpec::Kind::Coherent: return "coherent";
    case StateSpec::Kind::Squeezed: return "squeezed";
    case StateSpec::Kind::Thermal: return "thermal";
    case StateSpec::Kind::Cat: return "cat";
    case StateSpec::Kind::Gkp: return "gkp";
  }
  return "unknown";
}

std::string StateSpec::describe() const {
  std::ostringstream os;
  os << kind_name(kind);
  switch (kind) {
    case Kind::Vacuum: break;
    case Kind::Fock: os << "(" << n << ")"; break;
    case Kind::Coherent: os << "(" << alpha << ")"; break;
    case Kind::Squeezed: os << "(" << xi << ")"; break;
    case Kind::Thermal: os << "(" << nbar << ")"; break;
    case Kind::Cat: os << "(" << alpha << ", " << (base ? base->describe() : "vacuum") << ")"; break;
    case Kind::Gkp: os << "(s=" << spacing << ", delta=" << envelope << ")"; break;
  }
  return os.str();
}

int gkp_half_width(double spacing, double envelope) {
  const double k = envelope * envelope * spacing * spacing;  // weight² = e^{−k l²}
  double total = 0.0;
  for (int l = -400; l <= 400; ++l) total += std::exp(-k * l * l);
  int half = 0;
  double kept = 1.0;
  while (true) {
    const double dropped = total - kept;
    if (dropped < 1e-6 * total) return half;
    ++half;
    kept += 2.0 * std::exp(-k * half * half);
    if (half > 400) throw DomainError("gkp envelope too wide");
  }
}

StateExtent extent(const StateSpec& spec) {
  switch (spec.kind) {
    case StateSpec::Kind::Vacuum: return {};
    case StateSpec::Kind::Fock: return {0.0, spec.n};
    case StateSpec::Kind::Coherent: return {std::abs(spec.alpha), 0};
    case StateSpec::Kind::Squeezed: return {0.0, squeeze_excitation(std::abs(spec.xi))};
    case StateSpec::Kind::Thermal: return {0.0, thermal_excitation(spec.nbar)};
    case StateSpec::Kind::Cat: {
      const StateExtent b = spec.base ? extent(*spec.base) : StateExtent{};
      return {b.displacement + std::abs(spec.alpha) / 2.0, b.base_excitation};
    }
    case StateSpec::Kind::Gkp: {
      const int half = gkp_half_width(spec.spacing, spec.envelope);
      return {half * spec.spacing, squeeze_excitation(std::abs(std::log(spec.envelope)))};
    }
  }
  return {};
}

int required_dim(const StateSpec& spec, double extra_displacement, const DimPolicy& policy) {
  const StateExtent e = extent(spec);
  return auto_dim(e.displacement + extra_displacement, e.base_excitation, policy.margin, policy.ceiling);
}

namespace {

State build(const StateSpec& spec, int dim) {
  switch (spec.kind) {
    case StateSpec::Kind::Vacuum:
      return PureState(ground(dim));
    case StateSpec::Kind::Fock: {
      if (spec.n < 0 || spec.n >= dim) throw DomainError("fock level outside truncation");
      Vector v = Vector::Zero(dim);
      v(spec.n) = 1.0;
      return PureState(std::move(v));
    }
    case StateSpec::Kind::Coherent:
      return PureState(apply_displacement(spec.alpha, ground(dim)));
    case StateSpec::Kind::Squeezed:
      return PureState(apply_squeeze(spec.xi, ground(dim)));
    case StateSpec::Kind::Thermal: {
      if (!(spec.nbar >= 0)) throw DomainError("thermal occupation must be non-negative");
      Matrix rho = Matrix::Zero(dim, dim);
      const double q = spec.nbar / (1.0 + spec.nbar);
      double p = 1.0 / (1.0 + spec.nbar);
      for (int n = 0; n < dim; ++n, p *= q) rho(n, n) = p;
      return MixedState(std::move(rho));
    }
    case StateSpec::Kind::Cat: {
      const State base = build(spec.base ? *spec.base : StateSpec::vacuum(), dim);
      const cplx half = spec.alpha / 2.0;
      if (const auto* p = std::get_if<PureState>(&base)) {
        Vector v = apply_displacement(-half, p->amplitudes()) + apply_displacement(half, p->amplitudes());
        if (v.norm() < 1e-12) throw DomainError("cat components cancel: state is not normalizable");
        return PureState(std::move(v));
      }
      const Matrix k = displacement_matrix(-half, dim).matrix() + displacement_matrix(half, dim).matrix();
      return MixedState(k * std::get<MixedState>(base).matrix() * k.adjoint());
    }
    case StateSpec::Kind::Gkp: {
      if (!(spec.spacing > 0) || !(spec.envelope > 0)) {
        throw DomainError("gkp spacing and envelope must be positive");
      }
      const Vector peak = apply_squeeze(cplx(-std::log(spec.envelope), 0.0), ground(dim));
      const int half = gkp_half_width(spec.spacing, spec.envelope);
      Vector v = Vector::Zero(dim);
      for (int l = -half; l <= half; ++l) {
        const double x = l * spec.spacing;
        const double w = std::exp(-spec.envelope * spec.envelope * x * x / 2.0);
        v += w * apply_displacement(cplx(x, 0.0), peak);
      }
      return PureState(std::move(v));
    }
  }
  throw DomainError("unknown state kind");
}

}  // namespace

State make_state(const StateSpec& spec, int dim, const DimPolicy& policy) {
  State s = build(spec, dim);
  const double leak = leakage(s);
  if (leak > policy.leakage_threshold) {
    throw TruncationError("state " + spec.describe() + " leaks " + std::to_string(leak) +
                          " into the top Fock levels at dim " + std::to_string(dim));
  }
  return s;
}

cplx overlap_matrix(const State& s, cplx alpha) {
  // D(α) = D(α/2)², so m_α = <D(−α/2)ψ | D(α/2)ψ>; this halves the reach.
  const cplx half = alpha / 2.0;
  if (const auto* p = std::get_if<PureState>(&s)) {
    return apply_displacement(-half, p->amplitudes()).dot(apply_displacement(half, p->amplitudes()));
  }
  const Matrix& rho = std::get<MixedState>(s).matrix();
  const Matrix d = displacement_matrix(half, static_cast<int>(rho.rows())).matrix();
  // Tr(D ρ D) = Σ_ij (Dρ)_ij D_ji
  return (d * rho).cwiseProduct(d.transpose()).sum();
}

}  // namespace modvar
