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

#include "modvar/fock.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "modvar/errors.hpp"

namespace modvar {

void OscillatorConstants::validate(bool from_config) const {
  if (!(trap_frequency > 0) || !(mass_amu > 0) || !(lamb_dicke > 0) ||
      !(displacement_rate_c > 0)) {
    throw DomainError("oscillator constants must be strictly positive");
  }
  if (from_config && (displacement_rate_c < kMinDisplacementRate ||
                      displacement_rate_c > kMaxDisplacementRate)) {
    throw DomainError("displacement_rate_c " + std::to_string(displacement_rate_c) +
                      " outside the calibrated range [0.028, 0.035] per µs");
  }
}

int auto_dim(double max_total_displacement, int base_excitation, double margin, int ceiling) {
  if (!(max_total_displacement >= 0) || base_excitation < 0 || !(margin >= 0)) {
    throw DomainError("auto_dim: displacement, base excitation and margin must be non-negative");
  }
  const double reach = max_total_displacement + margin;
  const double needed = std::ceil(reach * reach) + base_excitation + 20.0;
  if (needed > ceiling) {
    throw TruncationError("experiment needs Fock dimension " +
                          std::to_string(static_cast<long long>(needed)) +
                          " above the ceiling " + std::to_string(ceiling));
  }
  return static_cast<int>(needed);
}

double top_leakage(const Eigen::VectorXd& populations) {
  const auto n = populations.size();
  const auto start = n - (n + 9) / 10;
  return populations.tail(n - start).sum();
}

OperatorMatrix::OperatorMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("operator matrix must be square");
}

OperatorMatrix annihilation(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return OperatorMatrix(std::move(a));
}

OperatorMatrix creation(int dim) { return OperatorMatrix(annihilation(dim).adjoint()); }

OperatorMatrix number_operator(int dim) {
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return OperatorMatrix(std::move(n));
}

OperatorMatrix position_operator(int dim) {
  const Matrix a = annihilation(dim).matrix();
  return OperatorMatrix(0.5 * (a + a.adjoint()));
}

OperatorMatrix momentum_operator(int dim) {
  const Matrix a = annihilation(dim).matrix();
  return OperatorMatrix((a - a.adjoint()) / cplx(0.0, 2.0));
}

GeneratorSpectrum::GeneratorSpectrum(const Eigen::MatrixXd& generator) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(generator);
  if (solver.info() != Eigen::Success) throw ConvergenceError("generator eigensolver failed");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

namespace {

Eigen::MatrixXd quadrature_generator(int dim) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    g(n - 1, n) = g(n, n - 1) = std::sqrt(static_cast<double>(n));
  }
  return g;
}

Eigen::MatrixXd squeeze_generator(int dim) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 2; n < dim; ++n) {
    g(n - 2, n) = g(n, n - 2) = 0.5 * std::sqrt(static_cast<double>(n) * (n - 1));
  }
  return g;
}

template <class Build>
std::shared_ptr<const GeneratorSpectrum> cached(std::map<int, std::shared_ptr<const GeneratorSpectrum>>& cache,
                                                std::mutex& mu, int dim, Build build) {
  if (dim <= 0) throw DomainError("Fock dimension must be positive");
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(dim); it != cache.end()) return it->second;
  }
  auto spectrum = std::make_shared<const GeneratorSpectrum>(build(dim));
  std::lock_guard lock(mu);
  return cache.try_emplace(dim, std::move(spectrum)).first->second;
}

// Diagonal of the Fock rotation R(φ) = exp(iφ n).
Vector fock_phases(double phi, int dim) {
  Vector r(dim);
  for (int n = 0; n < dim; ++n) r(n) = std::polar(1.0, phi * n);
  return r;
}

// exp(i t K) = V diag(e^{i t λ}) Vᵀ conjugated by R(φ): R V E Vᵀ R†.
Matrix rotated_exponential(const GeneratorSpectrum& spec, double t, double phi) {
  const int dim = spec.dim();
  Vector e(dim);
  for (int k = 0; k < dim; ++k) e(k) = std::polar(1.0, t * spec.values()(k));
  const Matrix v = spec.vectors().cast<cplx>();
  Matrix m = v * e.asDiagonal() * v.transpose();
  const Vector r = fock_phases(phi, dim);
  return r.asDiagonal() * m * r.conjugate().asDiagonal();
}

Vector rotated_exponential_apply(const GeneratorSpectrum& spec, double t, double phi, const Vector& psi) {
  const int dim = spec.dim();
  const Vector r = fock_phases(phi, dim);
  Vector w = r.conjugate().cwiseProduct(psi);
  Vector c = spec.vectors().transpose().cast<cplx>() * w;
  for (int k = 0; k < dim; ++k) c(k) *= std::polar(1.0, t * spec.values()(k));
  w = spec.vectors().cast<cplx>() * c;
  return r.cwiseProduct(w);
}

// D(α) = R(φ) exp(i|α|(a + a†)) R(φ)†, φ = arg α − π/2.
double displacement_rotation(cplx alpha) { return std::arg(alpha) - kPi / 2; }

// S(ξ) = R(φ) exp(−i r (a² + a†²)/2) R(φ)†, 2φ = arg ξ − π/2.
double squeeze_rotation(cplx xi) { return 0.5 * (std::arg(xi) - kPi / 2); }

}  // namespace

std::shared_ptr<const GeneratorSpectrum> displacement_spectrum(int dim) {
  static std::map<int, std::shared_ptr<const GeneratorSpectrum>> cache;
  static std::mutex mu;
  return cached(cache, mu, dim, [](int d) { return GeneratorSpectrum(quadrature_generator(d)); });
}

std::shared_ptr<const GeneratorSpectrum> squeeze_spectrum(int dim) {
  static std::map<int, std::shared_ptr<const GeneratorSpectrum>> cache;
  static std::mutex mu;
  return cached(cache, mu, dim, [](int d) { return GeneratorSpectrum(squeeze_generator(d)); });
}

OperatorMatrix displacement_matrix(cplx alpha, int dim) {
  if (alpha == cplx(0.0)) return OperatorMatrix(Matrix::Identity(dim, dim));
  return OperatorMatrix(
      rotated_exponential(*displacement_spectrum(dim), std::abs(alpha), displacement_rotation(alpha)));
}

Vector apply_displacement(cplx alpha, const Vector& psi) {
  if (alpha == cplx(0.0)) return psi;
  const auto spec = displacement_spectrum(static_cast<int>(psi.size()));
  return rotated_exponential_apply(*spec, std::abs(alpha), displacement_rotation(alpha), psi);
}

Matrix apply_displacement(cplx alpha, const Matrix& m) {
  if (alpha == cplx(0.0)) return m;
  return displacement_matrix(alpha, static_cast<int>(m.rows())).matrix() * m;
}

OperatorMatrix squeeze_matrix(cplx xi, int dim) {
  if (xi == cplx(0.0)) return OperatorMatrix(Matrix::Identity(dim, dim));
  return OperatorMatrix(rotated_exponential(*squeeze_spectrum(dim), -std::abs(xi), squeeze_rotation(xi)));
}

Vector apply_squeeze(cplx xi, const Vector& psi) {
  if (xi == cplx(0.0)) return psi;
  const auto spec = squeeze_spectrum(static_cast<int>(psi.size()));
  return rotated_exponential_apply(*spec, -std::abs(xi), squeeze_rotation(xi), psi);
}

}  // namespace modvar
