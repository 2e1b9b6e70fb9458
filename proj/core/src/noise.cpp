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

#include "modvar/noise.hpp"

#include <cmath>
#include <random>

#include "modvar/errors.hpp"

namespace modvar {

namespace {

constexpr int kMaxSteps = 1 << 15;
constexpr int kMaxTerms = 80;
constexpr double kStepNorm = 2.0;

// G = i(ḃ a† − ḃ* a) acting from the left or right, without forming G.
struct Generator {
  cplx up;    // coefficient of a†
  cplx down;  // coefficient of a
  Eigen::VectorXd sqrt_n;  // √1 … √(N−1)

  Generator(cplx rate, int dim) : up(cplx{0.0, 1.0} * rate), down(cplx{0.0, -1.0} * std::conj(rate)), sqrt_n(dim - 1) {
    for (int k = 0; k < dim - 1; ++k) sqrt_n(k) = std::sqrt(k + 1.0);
  }

  void left(const Matrix& x, Matrix& out, cplx scale) const {
    const Eigen::Index n = x.rows() - 1;
    out.bottomRows(n).noalias() += (scale * up) * (sqrt_n.asDiagonal() * x.topRows(n));
    out.topRows(n).noalias() += (scale * down) * (sqrt_n.asDiagonal() * x.bottomRows(n));
  }

  void right(const Matrix& x, Matrix& out, cplx scale) const {
    const Eigen::Index n = x.cols() - 1;
    out.leftCols(n).noalias() += (scale * up) * (x.rightCols(n) * sqrt_n.asDiagonal());
    out.rightCols(n).noalias() += (scale * down) * (x.leftCols(n) * sqrt_n.asDiagonal());
  }
};

Eigen::MatrixXd dephasing_rates(int dim, double rate_per_us) {
  Eigen::MatrixXd d(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) d(m, n) = -2.0 * rate_per_us * static_cast<double>((m - n) * (m - n));
  }
  return d;
}

// exp(t L) X by Taylor series over equal sub-steps of norm ≤ kStepNorm,
// summing each series until its terms drop below machine precision.
Matrix integrate(const Matrix& x0, const Generator& g, const Eigen::MatrixXd& d, double k_left, double k_right,
                 double t_us, int steps) {
  const cplx i{0.0, 1.0};
  auto apply = [&](const Matrix& x) -> Matrix {
    Matrix out = (d.array().cast<cplx>() * x.array()).matrix();
    if (k_left != 0.0) g.left(x, out, -i * k_left);
    if (k_right != 0.0) g.right(x, out, i * k_right);
    return out;
  };
  const double h = t_us / steps;
  Matrix x = x0;
  for (int s = 0; s < steps; ++s) {
    Matrix term = x;
    const double scale = std::max(x.cwiseAbs().maxCoeff(), 1e-300);
    int k = 1;
    for (; k <= kMaxTerms; ++k) {
      term = (h / k) * apply(term);
      x += term;
      if (term.cwiseAbs().maxCoeff() < 1e-17 * scale) break;
    }
    if (k > kMaxTerms) throw ConvergenceError("Taylor series of the dephasing generator did not converge");
  }
  return x;
}

}  // namespace

void NoiseParams::validate() const {
  if (dephasing_rate < 0 || linewidth_fwhm < 0 || phase_offset < 0 || sdf_time_per_unit < 0) {
    throw DomainError("noise parameters must be non-negative");
  }
  if (n_phase_samples < 1) throw DomainError("n_phase_samples must be at least 1");
}

double NoiseParams::phase_sigma(double t_us) const {
  return linewidth_fwhm * kPi * t_us * 1e-6 / std::sqrt(2.0 * std::log(2.0)) + phase_offset;
}

Matrix evolve_dephased_block(const Matrix& x, cplx alpha, double k_left, double k_right, double rate_per_us,
                             double t_us, IntegratorReport* report) {
  if (t_us < 0) throw DomainError("pulse time must be non-negative");
  if (rate_per_us < 0) throw DomainError("dephasing rate must be non-negative");
  if (report) *report = {};
  if (t_us == 0.0) return x;
  if (rate_per_us == 0.0) {
    // Pure displacement: D(k_l α) X D(k_r α)†.
    Matrix out = k_left != 0.0 ? apply_displacement(k_left * alpha, x) : x;
    if (k_right != 0.0) out = apply_displacement(k_right * alpha, Matrix(out.adjoint())).adjoint();
    return out;
  }
  const int dim = static_cast<int>(x.rows());
  const cplx rate = alpha / t_us;
  const Generator g(rate, dim);
  const Eigen::MatrixXd d = dephasing_rates(dim, rate_per_us);
  // Bound on the generator norm; sets the sub-step count.
  const double spectral = 2.0 * rate_per_us * (dim - 1.0) * (dim - 1.0) +
                          (std::abs(k_left) + std::abs(k_right)) * std::abs(rate) * 2.0 * std::sqrt(dim);
  const int steps = std::max(1, static_cast<int>(std::ceil(t_us * spectral / kStepNorm)));
  if (steps > kMaxSteps) throw ConvergenceError("dephased evolution needs more than " + std::to_string(kMaxSteps) + " steps");
  if (report) *report = {steps, 0.0};
  return integrate(x, g, d, k_left, k_right, t_us, steps);
}

Matrix evolve_dephased_block_steps(const Matrix& x, cplx alpha, double k_left, double k_right, double rate_per_us,
                                   double t_us, int steps) {
  if (t_us <= 0.0) return x;
  const int dim = static_cast<int>(x.rows());
  return integrate(x, Generator(alpha / t_us, dim), dephasing_rates(dim, rate_per_us), k_left, k_right, t_us, steps);
}

MixedState evolve_sdf_lindblad(const MixedState& joint, cplx alpha_target, double delta_phi,
                               const NoiseParams& params, IntegratorReport* report) {
  params.validate();
  if (joint.dim() % 2 != 0) throw DomainError("joint state must be qubit ⊗ oscillator");
  const int n = joint.dim() / 2;
  const cplx alpha = alpha_target * std::polar(1.0, -delta_phi / 2.0);
  const double t_us = params.pulse_time_us(std::abs(alpha_target));
  const double rate = params.dephasing_rate * 1e-6;
  const Matrix& rho = joint.matrix();
  // σ_x eigenbasis: |±> = (|0> ± |1>)/√2.
  auto block = [&](int q, int r) { return rho.block(q * n, r * n, n, n); };
  const double sx[2] = {1.0, -1.0};
  Matrix rotated[2][2];
  for (int s = 0; s < 2; ++s) {
    for (int u = 0; u < 2; ++u) {
      rotated[s][u] = 0.5 * (block(0, 0) + sx[u] * block(0, 1) + sx[s] * block(1, 0) + sx[s] * sx[u] * block(1, 1));
    }
  }
  IntegratorReport worst;
  for (int s = 0; s < 2; ++s) {
    for (int u = 0; u < 2; ++u) {
      IntegratorReport r;
      rotated[s][u] = evolve_dephased_block(rotated[s][u], alpha, sx[s] / 2.0, sx[u] / 2.0, rate, t_us, &r);
      worst.steps = std::max(worst.steps, r.steps);
      worst.max_change = std::max(worst.max_change, r.max_change);
    }
  }
  Matrix out(2 * n, 2 * n);
  for (int q = 0; q < 2; ++q) {
    for (int r = 0; r < 2; ++r) {
      Matrix acc = Matrix::Zero(n, n);
      for (int s = 0; s < 2; ++s) {
        for (int u = 0; u < 2; ++u) {
          const double ws = q == 0 ? 1.0 : sx[s];
          const double wu = r == 0 ? 1.0 : sx[u];
          acc += 0.5 * ws * wu * rotated[s][u];
        }
      }
      out.block(q * n, r * n, n, n) = acc;
    }
  }
  if (report) *report = worst;
  return MixedState(out);
}

PhaseAverage qubit_phase_average(const std::function<std::vector<double>(std::span<const double>)>& experiment,
                                 std::span<const double> t_sdf_us, const NoiseParams& params, std::uint64_t seed) {
  params.validate();
  std::vector<double> sigma;
  for (double t : t_sdf_us) sigma.push_back(params.phase_sigma(t));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> offsets(sigma.size());
  std::vector<double> mean, m2;
  const int n = params.n_phase_samples;
  for (int k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < sigma.size(); ++i) offsets[i] = sigma[i] * normal(rng);
    const std::vector<double> v = experiment(offsets);
    if (k == 0) {
      mean.assign(v.size(), 0.0);
      m2.assign(v.size(), 0.0);
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double delta = v[j] - mean[j];
      mean[j] += delta / (k + 1);
      m2[j] += delta * (v[j] - mean[j]);
    }
  }
  PhaseAverage out;
  out.mean = mean;
  for (double s : m2) out.std_error.push_back(n > 1 ? std::sqrt(s / (n - 1) / n) : 0.0);
  return out;
}

NoisyAsymmetric::NoisyAsymmetric(cplx alpha, double phase, const NoiseParams& params)
    : alpha_(alpha), phase_(phase), rate_(params.dephasing_rate * 1e-6), t_us_(params.pulse_time_us(std::abs(alpha))) {
  params.validate();
}

Matrix NoisyAsymmetric::average_channel(const Matrix& rho) const {
  const int dim = static_cast<int>(rho.rows());
  Matrix undisplaced = rho;
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) undisplaced(m, n) *= std::exp(-2.0 * rate_ * (m - n) * (m - n) * t_us_);
  }
  const Matrix displaced = evolve_dephased_block(rho, alpha_, 1.0, 1.0, rate_, t_us_);
  return 0.5 * (undisplaced + displaced);
}

Matrix NoisyAsymmetric::coherence(const Matrix& rho) const {
  return evolve_dephased_block(rho, alpha_, 1.0, 0.0, rate_, t_us_);
}

cplx NoisyAsymmetric::coherence_trace(const Matrix& x) const { return coherence(x).trace(); }

Matrix NoisyAsymmetric::outcome_map(const Matrix& rho, int outcome, double delta) const {
  if (outcome != 1 && outcome != -1) throw DomainError("outcome must be +1 or -1");
  const Matrix coh = coherence(rho);
  const cplx e = std::polar(1.0, phase_ + delta) * static_cast<double>(outcome);
  const Matrix coh_dag = coherence(rho.adjoint()).adjoint();
  return 0.25 * (2.0 * average_channel(rho) + e * coh + std::conj(e) * coh_dag);
}

NoisyLgiPoint noisy_lgi_value(const LgiSettings& settings, const NoiseParams& params, std::uint64_t seed,
                              const DimPolicy& policy) {
  params.validate();
  NoisyLgiPoint out;
  out.amp = settings.amp;
  out.ideal = lgi_value(settings, LgiEngine::Analytic, policy);
  const Matrix rho = density(lgi_input_state(settings, policy));
  const int dim = static_cast<int>(rho.rows());
  out.dim = dim;

  std::vector<NoisyAsymmetric> meas;
  for (int i = 0; i < 3; ++i) meas.emplace_back(settings.alpha(i), settings.phi[static_cast<std::size_t>(i)], params);

  struct PairScalars {
    cplx t_rho, t_avg, t_coh, t_coh_dag;
  };
  Matrix avg[2], coh[2];
  for (std::size_t i = 0; i < 2; ++i) {
    avg[i] = meas[i].average_channel(rho);
    coh[i] = meas[i].coherence(rho);
  }
  const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
  PairScalars sc[3];
  for (int k = 0; k < 3; ++k) {
    const auto x = static_cast<std::size_t>(pairs[k][0]);
    const NoisyAsymmetric& second = meas[static_cast<std::size_t>(pairs[k][1])];
    sc[k] = {second.coherence_trace(rho), second.coherence_trace(avg[x]), second.coherence_trace(coh[x]),
             second.coherence_trace(coh[x].adjoint())};
  }

  auto experiment = [&](std::span<const double> delta) {
    std::vector<double> v(7);
    for (int k = 0; k < 3; ++k) {
      const int x = pairs[k][0];
      const int y = pairs[k][1];
      const double px = settings.phi[static_cast<std::size_t>(x)] + delta[static_cast<std::size_t>(x)];
      const double py = settings.phi[static_cast<std::size_t>(y)] + delta[static_cast<std::size_t>(y)];
      const cplx ey = std::polar(1.0, py);
      v[static_cast<std::size_t>(k)] =
          0.5 * (ey * (std::polar(1.0, px) * sc[k].t_coh + std::polar(1.0, -px) * sc[k].t_coh_dag)).real();
      v[static_cast<std::size_t>(k + 3)] = 0.5 * (ey * (sc[k].t_rho - sc[k].t_avg)).real();
    }
    v[6] = v[0] + v[1] - v[2];
    return v;
  };
  const double t[3] = {meas[0].pulse_time_us(), meas[1].pulse_time_us(), meas[2].pulse_time_us()};
  const PhaseAverage avg_result = qubit_phase_average(experiment, t, params, seed);
  const auto& m = avg_result.mean;
  out.noisy = assemble_lgi(m[0], m[1], m[2], {m[3], m[4], m[5]});
  out.l_std_error = avg_result.std_error[6];
  return out;
}

std::vector<NoisyLgiPoint> noisy_lgi_curve(std::span<const OptimizeResult> settings, const NoiseParams& params,
                                           std::uint64_t seed, const DimPolicy& policy) {
  std::vector<NoisyLgiPoint> out;
  for (const auto& r : settings) out.push_back(noisy_lgi_value(r.settings, params, seed, policy));
  return out;
}

}  // namespace modvar
