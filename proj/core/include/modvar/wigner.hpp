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

#ifndef MODVAR_WIGNER_HPP
#define MODVAR_WIGNER_HPP

#include <ostream>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "modvar/modular.hpp"

namespace modvar {

/// W on a square grid in (X, P); values(i, j) is W(x_i + i p_j).
struct WignerGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  Eigen::MatrixXd values;

  double dx() const { return x_axis.size() > 1 ? x_axis[1] - x_axis[0] : 0.0; }
  double dp() const { return p_axis.size() > 1 ? p_axis[1] - p_axis[0] : 0.0; }
  /// Σ W dx dp.
  double integral() const { return values.sum() * dx() * dp(); }
  /// ∫ W dp at each x.
  std::vector<double> position_marginal() const;
};

/// W(γ) = (2/π) Tr[ρ D(γ) Π D(γ)†], summed over the untruncated
/// displaced-parity matrix elements (associated Laguerre form, Clenshaw
/// summation). Rows of the grid are split over
/// `threads` workers (0 = hardware concurrency).
WignerGrid wigner_grid(const State& state, double extent, int resolution = 201, int threads = 0);

/// W at a single point.
double wigner_at(const State& state, cplx gamma);

/// Half-width that holds the state: √(<n> + 3 sd(n)) + 3, capped at 12.
double default_extent(const State& state);

void write_wigner_csv(std::ostream& out, const WignerGrid& grid);
nlohmann::json wigner_metadata(const WignerGrid& grid, int dim);

/// Centres of the displaced copies produced by +1 branches of symmetric
/// measurements: each measurement maps c to c ± α/2.
std::vector<cplx> symmetric_lobe_centers(std::vector<cplx> centers, std::span<const ModularSetting> settings);
double max_separation(std::span<const cplx> centers);

}  // namespace modvar

#endif  // MODVAR_WIGNER_HPP
