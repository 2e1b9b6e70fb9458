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

#include "modvar/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "modvar/errors.hpp"

namespace modvar {

namespace {

// Corners beyond this underflow e^{−2|γ|²}.
constexpr double kMaxExtent = 12.0;

// <n|D(γ)ΠD(γ)†|n+L> = (−1)^n (2γ*)^L √(n!/(n+L)!) e^{−2|γ|²} L_n^{(L)}(4|γ|²).
// For each L the sum over n runs through Clenshaw's algorithm on the
// normalized Laguerre functions p_n, whose three-term recurrence is
//   p_{n+1} = (2n+1+L−x)/√((n+1)(n+1+L)) p_n − √(n(n+L)/((n+1)(n+1+L))) p_{n−1}.
// p_0 carries e^{−x/2} x^{L/2}/√L!, so every p_n is a matrix-element
// magnitude bounded by 1.
class ParityKernel {
 public:
  explicit ParityKernel(const Matrix& rho) : dim_(static_cast<int>(rho.rows())) {
    coeff_.resize(static_cast<std::size_t>(dim_));
    inv_.resize(static_cast<std::size_t>(dim_));
    lower_.resize(static_cast<std::size_t>(dim_));
    log_norm_.resize(static_cast<std::size_t>(dim_));
    for (int l = 0; l < dim_; ++l) {
      const int k_max = dim_ - 1 - l;
      auto& c = coeff_[static_cast<std::size_t>(l)];
      auto& inv = inv_[static_cast<std::size_t>(l)];
      auto& low = lower_[static_cast<std::size_t>(l)];
      c.resize(static_cast<std::size_t>(k_max + 1));
      inv.resize(static_cast<std::size_t>(k_max + 1));
      low.resize(static_cast<std::size_t>(k_max + 2));
      for (int n = 0; n <= k_max; ++n) {
        const cplx v = rho(n + l, n) * (l == 0 ? 1.0 : 2.0);
        c[static_cast<std::size_t>(n)] = (n % 2 == 0) ? v : -v;
        inv[static_cast<std::size_t>(n)] = 1.0 / std::sqrt((n + 1.0) * (n + 1.0 + l));
      }
      for (int n = 0; n <= k_max + 1; ++n) {
        low[static_cast<std::size_t>(n)] = std::sqrt(n * (n + static_cast<double>(l)) / ((n + 1.0) * (n + 1.0 + l)));
      }
      log_norm_[static_cast<std::size_t>(l)] = 0.5 * std::lgamma(l + 1.0);
    }
  }

  // Tr[ρ D(γ) Π D(γ)†].
  double operator()(cplx gamma) const {
    const double x = 4.0 * std::norm(gamma);
    if (x / 2.0 > 700.0) throw DomainError("Wigner point too far from the origin");
    const double r = std::abs(gamma);
    const cplx u = r > 0.0 ? std::conj(gamma) / r : cplx{};
    const int top = r > 0.0 ? dim_ - 1 : 0;
    const double log_x = r > 0.0 ? std::log(x) : 0.0;
    cplx acc{};
    for (int l = top; l >= 0; --l) {
      const double log_p0 = -x / 2.0 + (l > 0 ? 0.5 * l * log_x : 0.0) - log_norm_[static_cast<std::size_t>(l)];
      acc = acc * u + (log_p0 < -740.0 ? cplx{} : clenshaw(l, x, std::exp(log_p0)));
    }
    return acc.real();
  }

 private:
  cplx clenshaw(int l, double x, double p0) const {
    const auto& c = coeff_[static_cast<std::size_t>(l)];
    const auto& inv = inv_[static_cast<std::size_t>(l)];
    const auto& low = lower_[static_cast<std::size_t>(l)];
    const int k_max = static_cast<int>(c.size()) - 1;
    if (k_max == 0) return c[0] * p0;
    cplx b1{}, b2{};
    for (int k = k_max; k >= 1; --k) {
      const double alpha = (2.0 * k + 1.0 + l - x) * inv[static_cast<std::size_t>(k)];
      const cplx b0 = c[static_cast<std::size_t>(k)] + alpha * b1 - low[static_cast<std::size_t>(k + 1)] * b2;
      b2 = b1;
      b1 = b0;
    }
    const double p1 = (1.0 + l - x) * inv[0] * p0;
    return c[0] * p0 + p1 * b1 - low[1] * p0 * b2;
  }

  int dim_;
  std::vector<std::vector<cplx>> coeff_;
  std::vector<std::vector<double>> inv_;
  std::vector<std::vector<double>> lower_;
  std::vector<double> log_norm_;
};

}  // namespace

std::vector<double> WignerGrid::position_marginal() const {
  std::vector<double> out(x_axis.size());
  for (std::size_t i = 0; i < x_axis.size(); ++i) out[i] = values.row(static_cast<Eigen::Index>(i)).sum() * dp();
  return out;
}

double wigner_at(const State& state, cplx gamma) {
  return 2.0 / kPi * ParityKernel(density(state))(gamma);
}

WignerGrid wigner_grid(const State& state, double extent, int resolution, int threads) {
  if (!(extent > 0)) throw DomainError("Wigner extent must be positive");
  if (resolution < 2) throw DomainError("Wigner resolution must be at least 2");
  const ParityKernel kernel(density(state));
  WignerGrid g;
  for (int i = 0; i < resolution; ++i) {
    const double v = -extent + 2.0 * extent * i / (resolution - 1);
    g.x_axis.push_back(v);
    g.p_axis.push_back(v);
  }
  g.values.resize(resolution, resolution);
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, resolution);
  auto run = [&](int first_row, int stride) {
    for (int i = first_row; i < resolution; i += stride) {
      for (int j = 0; j < resolution; ++j) {
        const cplx gamma{g.x_axis[static_cast<std::size_t>(i)], g.p_axis[static_cast<std::size_t>(j)]};
        g.values(i, j) = 2.0 / kPi * kernel(gamma);
      }
    }
  };
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
    for (auto& t : pool) t.join();
  }
  return g;
}

double default_extent(const State& state) {
  const Eigen::VectorXd pops = std::holds_alternative<PureState>(state) ? std::get<PureState>(state).populations()
                                                                       : std::get<MixedState>(state).populations();
  double mean = 0.0, second = 0.0;
  for (int n = 0; n < pops.size(); ++n) {
    mean += n * pops(n);
    second += static_cast<double>(n) * n * pops(n);
  }
  const double sd = std::sqrt(std::max(0.0, second - mean * mean));
  // Corners beyond ~13 underflow the displaced-parity recursion.
  return std::min(std::sqrt(mean + 3.0 * sd) + 3.0, kMaxExtent);
}

void write_wigner_csv(std::ostream& out, const WignerGrid& grid) {
  out << "x,p,w\n";
  const auto precision = out.precision(10);
  for (std::size_t i = 0; i < grid.x_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.p_axis.size(); ++j) {
      out << grid.x_axis[i] << ',' << grid.p_axis[j] << ','
          << grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) << '\n';
    }
  }
  out.precision(precision);
}

nlohmann::json wigner_metadata(const WignerGrid& grid, int dim) {
  return {{"resolution", grid.x_axis.size()},
          {"x_range", {grid.x_axis.front(), grid.x_axis.back()}},
          {"p_range", {grid.p_axis.front(), grid.p_axis.back()}},
          {"dim", dim},
          {"min", grid.values.minCoeff()},
          {"max", grid.values.maxCoeff()},
          {"integral", grid.integral()}};
}

std::vector<cplx> symmetric_lobe_centers(std::vector<cplx> centers, std::span<const ModularSetting> settings) {
  for (const auto& s : settings) {
    std::vector<cplx> next;
    for (const cplx c : centers) {
      next.push_back(c - s.alpha / 2.0);
      next.push_back(c + s.alpha / 2.0);
    }
    centers = std::move(next);
  }
  return centers;
}

double max_separation(std::span<const cplx> centers) {
  double best = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) best = std::max(best, std::abs(centers[i] - centers[j]));
  }
  return best;
}

}  // namespace modvar
