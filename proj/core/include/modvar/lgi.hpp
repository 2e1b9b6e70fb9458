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

#ifndef MODVAR_LGI_HPP
#define MODVAR_LGI_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "modvar/branch_tree.hpp"

namespace modvar {

/// Three asymmetric measurements α_X = amp·e^{iθ_X} with phases φ_X on a
/// (optionally squeezed) thermal input.
struct LgiSettings {
  double amp = 0.0;
  std::array<double, 3> theta{};
  std::array<double, 3> phi{};
  double nbar = 0.0;
  std::optional<cplx> input_squeeze;

  cplx alpha(int i) const { return std::polar(amp, theta[static_cast<std::size_t>(i)]); }
  ModularSetting setting(int i) const {
    return ModularSetting::asymmetric(alpha(i), phi[static_cast<std::size_t>(i)]);
  }
  bool rotation_invariant_input() const { return !input_squeeze || std::abs(*input_squeeze) == 0.0; }
};

struct LgiResult {
  double c_ab = 0.0;
  double c_bc = 0.0;
  double c_ac = 0.0;
  double l = 0.0;
  double ts = 0.0;
  double l_penalized = 0.0;
  std::array<double, 3> sit{};  // S̃_AB, S̃_BC, S̃_AC
};

LgiResult assemble_lgi(double c_ab, double c_bc, double c_ac, const std::array<double, 3>& sit);

enum class LgiEngine { Analytic, Matrix };

/// Input state of the LGI experiment (thermal, optionally squeezed).
State lgi_input_state(const LgiSettings& s, const DimPolicy& policy = {});
int lgi_dim(const LgiSettings& s, const DimPolicy& policy = {});

/// Pairwise correlators of (A,B), (B,C), (A,C) and forward S̃ of each pair.
/// Analytic uses the Gaussian characteristic function; Matrix builds the
/// two-measurement branch trees.
LgiResult lgi_value(const LgiSettings& s, LgiEngine engine = LgiEngine::Analytic, const DimPolicy& policy = {});

struct OptimizeOptions {
  int max_iterations = 2000;
  int random_starts = 24;   // used when no previous optimum is given
  std::uint64_t seed = 7;
  bool verify_every_point = false;  // chains: also run random starts at every amp, keep the better
};

struct OptimizeResult {
  LgiSettings settings;
  LgiResult value;
  int iterations = 0;
  bool converged = false;
  bool restarted = false;  // continuation jump triggered random-restart verification
};

/// Maximizes L over (θ_A, θ_B, θ_C, φ_A, φ_B, φ_C) at fixed amp and input.
/// With `previous` the search starts from its angles; otherwise from the best
/// of seeded random starts. Angles are wrapped to (−π, π] and, for
/// rotation-invariant inputs, rotated jointly to minimize Σ|θ|.
OptimizeResult optimize_settings(double amp, double nbar, std::optional<cplx> input_squeeze,
                                 const std::optional<LgiSettings>& previous, const OptimizeOptions& options = {});

/// Continuation along an ascending amp grid. A jump in L above
/// `jump_threshold` between neighbours triggers random-restart verification.
std::vector<OptimizeResult> optimize_chain(std::span<const double> amps, double nbar,
                                           std::optional<cplx> input_squeeze, const OptimizeOptions& options = {},
                                           double jump_threshold = 0.2);

/// Ascending grid start, start+step, … up to stop (inclusive within 1e-9).
std::vector<double> amp_grid(double start, double stop, double step);

/// CSV: amp, θ_A, θ_B, θ_C, φ_A, φ_B, φ_C, L, TS, L_pen.
void write_settings_csv(std::ostream& out, std::span<const OptimizeResult> rows);

// Conversion of any SIT pair into an LGI violation. Outcome +1 is read as U.
struct ProtocolAssignment {
  int f_a_up = 1, f_a_down = -1;
  int f_b_up = 1, f_b_down = 1;
  int f_c_up = -1, f_c_down = 1;
};

struct ProtocolResult {
  ProtocolAssignment assignment;
  double a = 0.0;
  double l = 1.0;
};

/// a = P_{C(B)}(D) − P_C(D); negative a flips the C assignment. L = 1 + 2|a|.
ProtocolResult sit_to_lgi_protocol(double a);

/// Runs B then C (and C alone) on `state` and assembles L from the correlators
/// under the protocol's assignment.
ProtocolResult sit_to_lgi_end_to_end(const State& state, const ModularSetting& b, const ModularSetting& c);

struct SqueezedComparisonRow {
  double amp = 0.0;
  double l_ground = 0.0;
  double l_squeezed = 0.0;
  double ts_ground = 0.0;
  double ts_squeezed = 0.0;
};

struct SqueezedComparison {
  std::vector<SqueezedComparisonRow> rows;
  double wave_packet_ratio = 1.0;  // e^r: separation over squeezed packet size, relative to vacuum
};

SqueezedComparison squeezed_lgi_comparison(std::span<const double> amps, double r = 0.9,
                                           const OptimizeOptions& options = {});

}  // namespace modvar

#endif  // MODVAR_LGI_HPP
