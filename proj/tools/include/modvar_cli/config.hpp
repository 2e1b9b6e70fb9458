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

#ifndef MODVAR_CLI_CONFIG_HPP
#define MODVAR_CLI_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "modvar/classical.hpp"
#include "modvar/modular.hpp"
#include "modvar/noise.hpp"

namespace modvar::cli {

/// Schema violation at a dotted field path such as "scan.points".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)), message_(message) {}
  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }

 private:
  std::string field_;
  std::string message_;
};

struct Range {
  double from = 0.0;
  double to = 0.0;
  int points = 1;
  double at(int i) const { return points == 1 ? from : from + (to - from) * i / (points - 1); }
};

struct MeasurementSpec {
  ModularSetting setting;
  int outcome = 1;  // branch followed where a single branch is needed
};

struct SitScanConfig {
  enum class Parameter { SqueezeR, AlphaARe, AlphaAIm, AlphaAAbs, AlphaAArg, PhaseB };
  StateSpec state;
  MeasurementSpec a;
  MeasurementSpec b;
  Parameter parameter = Parameter::AlphaARe;
  Range scan;
};

struct NsitSuiteConfig {
  cplx alpha_a{};
  cplx alpha_b{};
  std::optional<cplx> alpha_a_compare;
  int phases = 50;
  std::vector<StateSpec> bases;
  int histogram_bins = 20;
};

struct CorrelatorMapConfig {
  StateSpec state;
  Variant variant = Variant::Asymmetric;
  MeasurementSpec a;
  double phase_b = 0.0;
  Range re;
  Range im;
};

struct LgiSweepConfig {
  std::vector<double> amps;
  std::vector<double> nbar;
  std::optional<NoiseParams> noise;
  double noise_amp_step = 0.0;  // 0: noise at every grid amp
  OptimizeOptions optimizer;
};

struct LgiOptimizeConfig {
  std::vector<double> amps;
  double nbar = 0.0;
  std::optional<double> squeeze_r;
  std::optional<double> compare_squeeze;
  OptimizeOptions optimizer;
};

struct WignerConfig {
  StateSpec state;
  std::vector<MeasurementSpec> measurements;
  std::optional<double> extent;
  int resolution = 201;
};

struct ClassicalRamseyConfig {
  std::vector<double> a0;
  double sigma = 0.0;
  double frequency = 50.0;
  double phase = 0.0;
  double t_max = 0.02;
  int points = 401;
  std::uint64_t mc_samples = 0;  // 0: analytic only
};

struct ThreeLevelConfig {
  int cases = 100;
  double max_alpha = 3.0;
};

using ExperimentBody = std::variant<SitScanConfig, NsitSuiteConfig, CorrelatorMapConfig, LgiSweepConfig,
                                    LgiOptimizeConfig, WignerConfig, ClassicalRamseyConfig, ThreeLevelConfig>;

struct ExperimentConfig {
  std::string kind;
  std::string name;
  std::uint64_t seed = 1;
  DimPolicy policy;
  std::optional<int> dim;
  ExperimentBody body;
  std::string source;  // raw text, hashed into the sidecar
};

/// Validates the whole document before returning; throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);

}  // namespace modvar::cli

#endif  // MODVAR_CLI_CONFIG_HPP
