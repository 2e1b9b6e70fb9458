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

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include <nlohmann/json.hpp>

#include "modvar/classical.hpp"
#include "modvar/errors.hpp"
#include "modvar_cli/config.hpp"
#include "modvar_cli/runner.hpp"

namespace {

using nlohmann::json;
namespace cli = modvar::cli;

int report(const json& err, int code) {
  std::cerr << err.dump() << '\n';
  return code;
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const cli::ConfigError& e) {
    return report({{"error", "config"}, {"field", e.field()}, {"message", e.message()}}, 2);
  } catch (const modvar::TruncationError& e) {
    return report({{"error", "truncation"}, {"message", e.what()}}, 1);
  } catch (const modvar::ConvergenceError& e) {
    return report({{"error", "convergence"}, {"message", e.what()}}, 1);
  } catch (const modvar::DomainError& e) {
    return report({{"error", "domain"}, {"message", e.what()}}, 1);
  } catch (const std::exception& e) {
    return report({{"error", "runtime"}, {"message", e.what()}}, 1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modvar: sequential modular-variable measurement experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "results";
  std::optional<std::uint64_t> seed;
  std::optional<int> dim_override;
  int threads = 0;

  auto* run = app.add_subcommand("run", "Run an experiment config and write <name>.csv and <name>.json");
  run->add_option("config", config_path, "YAML experiment config")->required();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--dim-override", dim_override, "Force the Fock dimension");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  auto* validate = app.add_subcommand("validate", "Check a config against the schema without running it");
  validate->add_option("config", config_path, "YAML experiment config")->required();

  modvar::ClassicalFieldParams field;
  std::vector<double> a0s{8000.0};
  double t_max = 0.02;
  int points = 401;
  auto* ramsey = app.add_subcommand("ramsey", "Print classical Ramsey <Q>(T) traces as CSV");
  ramsey->add_option("--a0", a0s, "Mean field amplitudes")->capture_default_str();
  ramsey->add_option("--sigma", field.sigma, "Amplitude spread")->required();
  ramsey->add_option("--frequency", field.frequency, "Field frequency in Hz")->capture_default_str();
  ramsey->add_option("--phase", field.phase, "Second pulse phase")->capture_default_str();
  ramsey->add_option("--t-max", t_max, "Longest wait in s")->capture_default_str();
  ramsey->add_option("--points", points, "Trace points")->capture_default_str()->check(CLI::Range(2, 10000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) {
    return guarded([&] {
      const auto cfg = cli::load_config(config_path);
      cli::RunOptions opt;
      opt.seed = seed;
      opt.dim_override = dim_override;
      opt.threads = threads;
      const auto result = cli::execute(cfg, opt);
      const auto files = cli::write_outputs(result, cfg.name, out_dir);
      std::cout << json{{"status", "ok"},
                        {"csv", files.csv.string()},
                        {"sidecar", files.sidecar.string()},
                        {"rows", result.sidecar.value("rows", 0)},
                        {"wall_time_s", result.sidecar["wall_time_s"]}}
                       .dump()
                << '\n';
      return 0;
    });
  }
  if (*validate) {
    return guarded([&] {
      const auto cfg = cli::load_config(config_path);
      std::cout << json{{"status", "valid"}, {"kind", cfg.kind}, {"name", cfg.name}}.dump() << '\n';
      return 0;
    });
  }
  return guarded([&] {
    std::cout << "a0,T,Q\n";
    for (double a0 : a0s) {
      auto p = field;
      p.a0 = a0;
      p.validate();
      for (const auto& pt : modvar::classical_trace(p, t_max, points)) {
        std::cout << cli::format_number(a0) << ',' << cli::format_number(pt.wait) << ','
                  << cli::format_number(pt.q) << '\n';
      }
    }
    return 0;
  });
}
