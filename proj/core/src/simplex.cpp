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

#include "modvar/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace modvar {

namespace {

using Point = std::vector<double>;

struct Vertex {
  Point x;
  double f;
};

SimplexResult run_once(const std::function<double(const Point&)>& f, const Point& start, const SimplexOptions& o,
                       int& evaluations) {
  const std::size_t n = start.size();
  auto eval = [&](const Point& x) {
    ++evaluations;
    return f(x);
  };
  std::vector<Vertex> simplex;
  simplex.push_back({start, eval(start)});
  for (std::size_t i = 0; i < n; ++i) {
    Point x = start;
    x[i] += o.initial_step;
    simplex.push_back({x, eval(x)});
  }
  auto along = [&](const Point& c, const Point& w, double t) {
    Point out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i] + t * (w[i] - c[i]);
    return out;
  };

  SimplexResult result;
  int it = 0;
  for (; it < o.max_iterations; ++it) {
    std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    double spread = simplex.back().f - simplex.front().f;
    double size = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t i = 0; i < n; ++i) size = std::max(size, std::abs(simplex[v].x[i] - simplex[0].x[i]));
    }
    if (spread <= o.f_tolerance && size <= o.x_tolerance) {
      result.converged = true;
      break;
    }
    Point centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);
    }
    Vertex& worst = simplex.back();
    const Point xr = along(centroid, worst.x, -1.0);
    const double fr = eval(xr);
    if (fr < simplex.front().f) {
      const Point xe = along(centroid, worst.x, -2.0);
      const double fe = eval(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < simplex[n - 1].f) {
      worst = {xr, fr};
      continue;
    }
    // Contraction: outside if the reflection beat the worst vertex, else inside.
    const bool outside = fr < worst.f;
    const Point xc = along(centroid, worst.x, outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < std::min(fr, worst.f)) {
      worst = {xc, fc};
      continue;
    }
    for (std::size_t v = 1; v <= n; ++v) {
      simplex[v].x = along(simplex[0].x, simplex[v].x, 0.5);
      simplex[v].f = eval(simplex[v].x);
    }
  }
  std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  result.x = simplex.front().x;
  result.value = simplex.front().f;
  result.iterations = it;
  return result;
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> start, const SimplexOptions& options) {
  int evaluations = 0;
  SimplexResult best = run_once(f, start, options, evaluations);
  int iterations = best.iterations;
  bool converged = best.converged;
  SimplexOptions local = options;
  for (int r = 0; r < options.max_restarts; ++r) {
    local.initial_step = std::max(options.initial_step * 0.1, 1e-3);
    SimplexResult next = run_once(f, best.x, local, evaluations);
    iterations += next.iterations;
    converged = next.converged;
    const bool gained = next.value < best.value - options.restart_gain;
    if (next.value < best.value) best = next;
    if (!gained) break;
  }
  best.iterations = iterations;
  best.evaluations = evaluations;
  best.converged = converged;
  return best;
}

}  // namespace modvar
