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

#ifndef MODVAR_CLI_RUNNER_HPP
#define MODVAR_CLI_RUNNER_HPP

#include <cstdint>
#include <functional>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "modvar_cli/config.hpp"

namespace modvar::cli {

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> dim_override;
  int threads = 0;  // 0 = hardware concurrency
};

struct RunResult {
  std::string csv;
  nlohmann::json sidecar;
};

/// Runs the experiment in memory. The CSV text depends only on the config and
/// the seed; the sidecar also records wall time.
RunResult execute(const ExperimentConfig& config, const RunOptions& options = {});

struct WrittenFiles {
  std::filesystem::path csv;
  std::filesystem::path sidecar;
};

/// Writes <name>.csv and <name>.json into `out_dir`, creating it if needed.
WrittenFiles write_outputs(const RunResult& result, const std::string& name, const std::filesystem::path& out_dir);

/// Index-ordered parallel loop; the first exception thrown by any worker is
/// rethrown after all workers stop.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

/// "%.17g", empty for NaN.
std::string format_number(double v);

}  // namespace modvar::cli

#endif  // MODVAR_CLI_RUNNER_HPP
