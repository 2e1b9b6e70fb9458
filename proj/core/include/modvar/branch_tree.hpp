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

#ifndef MODVAR_BRANCH_TREE_HPP
#define MODVAR_BRANCH_TREE_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modvar/modular.hpp"

namespace modvar {

struct BranchNode {
  int outcome = 0;           // ±1, 0 at the root
  double probability = 1.0;  // joint probability of the outcome string so far
  std::optional<State> post_state;
  bool degenerate = false;
  std::vector<BranchNode> children;  // empty or {+1, −1}
};

/// Exact record of a sequential modular-measurement experiment: every outcome
/// string, its joint probability and the renormalized post-measurement state.
class BranchTree {
 public:
  BranchTree(BranchNode root, std::vector<ModularSetting> settings);

  const BranchNode& root() const { return root_; }
  const std::vector<ModularSetting>& settings() const { return settings_; }
  int depth() const { return static_cast<int>(settings_.size()); }

  /// Node reached by an outcome prefix, or nullptr past a degenerate branch.
  const BranchNode* find(std::span<const int> outcomes) const;
  /// Joint probability of an outcome prefix (0 past a degenerate branch).
  double joint(std::span<const int> outcomes) const;
  /// P_{B(A…)}(b): last measurement's outcome summed over all earlier ones.
  double marginal_last(int outcome) const;
  /// Σ (Π outcomes) · P over full outcome strings.
  double correlator() const;
  /// Full-depth outcome strings ("+-", …) with their joint probabilities.
  std::map<std::string, double> leaf_probabilities() const;

 private:
  BranchNode root_;
  std::vector<ModularSetting> settings_;
};

std::string outcome_key(std::span<const int> outcomes);

/// Exact branch-wise propagation through every setting in order.
BranchTree measure_sequence(const State& state, std::span<const ModularSetting> settings);

/// Multinomial shot sampling of the tree's leaf distribution. Deterministic for
/// a fixed seed; zero-count strings are omitted.
std::map<std::string, std::uint64_t> sample_shots(const BranchTree& tree, std::uint64_t n_shots,
                                                  std::uint64_t seed);
std::map<std::string, std::uint64_t> sample_shots(const State& state, std::span<const ModularSetting> settings,
                                                  std::uint64_t n_shots, std::uint64_t seed);

/// JSON: {"settings": [...], "probabilities": {"+-": p, ...}}; post-states are
/// added as {"re": [...], "im": [...]} amplitude or matrix arrays on request.
nlohmann::json to_json(const BranchTree& tree, bool include_states = false);

/// Signaling-in-time of A to B measured by the branch engine.
struct SitMeasurement {
  double p_b_alone = 0.0;   // P_B(+1)
  double p_b_after_a = 0.0; // P_{B(A)}(+1)
  double sit = 0.0;         // P_B(+1) − P_{B(A)}(+1)
  double kappa = 1.0;       // classical fidelity of the two B distributions
  double correlator = 0.0;  // Σ ab P_BA(b, a)
};

SitMeasurement measure_sit(const State& state, const ModularSetting& a, const ModularSetting& b);

}  // namespace modvar

#endif  // MODVAR_BRANCH_TREE_HPP
