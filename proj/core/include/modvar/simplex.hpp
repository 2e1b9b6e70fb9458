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

#ifndef MODVAR_SIMPLEX_HPP
#define MODVAR_SIMPLEX_HPP

#include <functional>
#include <vector>

namespace modvar {

struct SimplexOptions {
  double initial_step = 0.3;
  double f_tolerance = 1e-11;   // spread of vertex values
  double x_tolerance = 1e-8;    // largest vertex distance from the best
  int max_iterations = 2000;
  int max_restarts = 6;         // fresh simplex around the optimum until no gain
  double restart_gain = 1e-10;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder–Mead minimization with the standard coefficients (1, 2, ½, ½).
SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> start, const SimplexOptions& options = {});

}  // namespace modvar

#endif  // MODVAR_SIMPLEX_HPP
