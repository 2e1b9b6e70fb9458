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

#ifndef MODVAR_FOCK_HPP
#define MODVAR_FOCK_HPP

// Truncated Fock-space representation of a single harmonic oscillator.
//
// Conventions used throughout the library:
//   X = (a + a†)/2,  P = (a − a†)/(2i),  [X, P] = i/2,
//   <α|X|α> = Re α,  <α|P|α> = Im α,
//   D(α) = exp(α a† − α* a),
//   S(ξ) = exp((ξ* a² − ξ a†²)/2)   (real ξ = r > 0 squeezes X: Var_X = e^{-2r}/4).

#include <complex>
#include <memory>

#include <Eigen/Dense>

namespace modvar {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Physical constants of the trapped-ion oscillator. Only the displacement
/// rate enters the noise model; the others are carried for bookkeeping.
struct OscillatorConstants {
  double trap_frequency = 2.0 * kPi * 1.85e6;  // rad/s
  double mass_amu = 40.0;
  double lamb_dicke = 0.05;
  double displacement_rate_c = 0.030;  // displacement per µs of SDF drive

  static constexpr double kMinDisplacementRate = 0.028;
  static constexpr double kMaxDisplacementRate = 0.035;

  /// Throws DomainError on a non-positive field, or (when `from_config`)
  /// on a displacement rate outside the calibrated window.
  void validate(bool from_config = false) const;
};

/// Truncation policy shared by every experiment.
struct DimPolicy {
  int ceiling = 400;
  double margin = 3.0;
  double leakage_threshold = 1e-8;
};

/// Smallest Fock dimension that holds a state displaced by up to
/// `max_total_displacement` on top of `base_excitation` quanta:
/// ceil((d + margin)²) + base + 20. Throws TruncationError above `ceiling`.
int auto_dim(double max_total_displacement, int base_excitation, double margin,
             int ceiling = DimPolicy{}.ceiling);

/// Probability mass held in the top 10% of Fock levels.
double top_leakage(const Eigen::VectorXd& populations);

/// Dense operator on a truncated Fock space.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Matrix adjoint() const { return m_.adjoint(); }

 private:
  Matrix m_;
};

OperatorMatrix annihilation(int dim);
OperatorMatrix creation(int dim);
OperatorMatrix number_operator(int dim);
OperatorMatrix position_operator(int dim);
OperatorMatrix momentum_operator(int dim);

/// Real symmetric generator spectrum, cached per dimension. The displacement
/// kernel diagonalizes a + a†; the squeeze kernel diagonalizes (a² + a†²)/2.
/// Every displacement and squeeze is a Fock-phase rotation of exp(i t K).
class GeneratorSpectrum {
 public:
  GeneratorSpectrum(const Eigen::MatrixXd& generator);

  int dim() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

std::shared_ptr<const GeneratorSpectrum> displacement_spectrum(int dim);
std::shared_ptr<const GeneratorSpectrum> squeeze_spectrum(int dim);

/// Matrix of D(α) in the truncated basis.
OperatorMatrix displacement_matrix(cplx alpha, int dim);
/// D(α)|ψ>, O(N²) once the spectrum is cached.
Vector apply_displacement(cplx alpha, const Vector& psi);
/// D(α)·M for a dense matrix M.
Matrix apply_displacement(cplx alpha, const Matrix& m);

OperatorMatrix squeeze_matrix(cplx xi, int dim);
Vector apply_squeeze(cplx xi, const Vector& psi);

}  // namespace modvar

#endif  // MODVAR_FOCK_HPP
