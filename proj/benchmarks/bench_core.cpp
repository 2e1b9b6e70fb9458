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

#include <benchmark/benchmark.h>

#include "modvar/branch_tree.hpp"
#include "modvar/lgi.hpp"
#include "modvar/noise.hpp"
#include "modvar/wigner.hpp"

namespace modvar {
namespace {

void BM_ApplyDisplacement(benchmark::State& st) {
  const int dim = static_cast<int>(st.range(0));
  const Vector psi = std::get<PureState>(make_state(StateSpec::squeezed({0.5, 0.0}), dim)).amplitudes();
  apply_displacement({1.3, -0.4}, psi);  // builds the cached generator spectrum
  for (auto _ : st) benchmark::DoNotOptimize(apply_displacement({1.3, -0.4}, psi));
}
BENCHMARK(BM_ApplyDisplacement)->Arg(100)->Arg(200)->Arg(400);

void BM_MeasureSequence(benchmark::State& st) {
  const auto spec = StateSpec::cat({0.0, kPi}, StateSpec::squeezed({-0.82, 0.0}));
  const std::vector<ModularSetting> seq{ModularSetting::symmetric(4.09), ModularSetting::symmetric({0.0, kPi})};
  const State s = make_state(spec, required_dim(spec, 4.09 / 2.0 + kPi / 2.0));
  for (auto _ : st) benchmark::DoNotOptimize(measure_sequence(s, seq));
}
BENCHMARK(BM_MeasureSequence)->Unit(benchmark::kMillisecond);

void BM_LgiValue(benchmark::State& st) {
  LgiSettings s;
  s.amp = 2.0;
  s.theta = {0.0, 1.2, -0.9};
  s.phi = {0.4, -0.3, 1.0};
  s.nbar = 0.23;
  const auto engine = st.range(0) ? LgiEngine::Matrix : LgiEngine::Analytic;
  for (auto _ : st) benchmark::DoNotOptimize(lgi_value(s, engine));
}
BENCHMARK(BM_LgiValue)->Arg(0)->Arg(1);

void BM_WignerGrid(benchmark::State& st) {
  const State s = make_state(StateSpec::cat({0.0, 3.0}), 80);
  for (auto _ : st) benchmark::DoNotOptimize(wigner_grid(s, 4.0, static_cast<int>(st.range(0)), 1));
}
BENCHMARK(BM_WignerGrid)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_DephasedBlock(benchmark::State& st) {
  const int dim = static_cast<int>(st.range(0));
  const Matrix rho = density(make_state(StateSpec::vacuum(), dim));
  for (auto _ : st) benchmark::DoNotOptimize(evolve_dephased_block(rho, {2.0, 0.5}, 1.0, 0.0, 30e-6, 68.7));
}
BENCHMARK(BM_DephasedBlock)->Arg(60)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace modvar

BENCHMARK_MAIN();
