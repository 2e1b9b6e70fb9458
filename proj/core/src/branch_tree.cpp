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

#include "modvar/branch_tree.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "modvar/closed_form.hpp"
#include "modvar/errors.hpp"

namespace modvar {

namespace {

void expand(BranchNode& node, std::span<const ModularSetting> settings, std::span<const KrausCache> caches,
            std::size_t level) {
  if (level == settings.size()) return;
  if (node.degenerate || !node.post_state) {
    node.degenerate = true;
    return;
  }
  const MeasureResult r = caches.empty() ? measure_once(*node.post_state, settings[level])
                                         : measure_once(*node.post_state, caches[level]);
  for (int outcome : {1, -1}) {
    BranchNode child;
    child.outcome = outcome;
    child.probability = node.probability * r.probability(outcome);
    child.post_state = r.post(outcome);
    child.degenerate = !child.post_state.has_value();
    expand(child, settings, caches, level + 1);
    node.children.push_back(std::move(child));
  }
  // Children carry their own copies; interior states are kept for inspection.
}

void collect_leaves(const BranchNode& node, std::string& prefix, int depth, std::map<std::string, double>& out) {
  if (static_cast<int>(prefix.size()) == depth) {
    out[prefix] += node.probability;
    return;
  }
  if (node.children.empty()) {
    // Degenerate subtree: every continuation has zero probability.
    return;
  }
  for (const auto& c : node.children) {
    prefix.push_back(c.outcome > 0 ? '+' : '-');
    collect_leaves(c, prefix, depth, out);
    prefix.pop_back();
  }
}

nlohmann::json state_json(const State& s) {
  nlohmann::json j;
  if (const auto* p = std::get_if<PureState>(&s)) {
    std::vector<double> re, im;
    for (int i = 0; i < p->dim(); ++i) {
      re.push_back(p->amplitudes()(i).real());
      im.push_back(p->amplitudes()(i).imag());
    }
    j["kind"] = "pure";
    j["re"] = re;
    j["im"] = im;
    return j;
  }
  const Matrix& m = std::get<MixedState>(s).matrix();
  std::vector<std::vector<double>> re(m.rows()), im(m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      re[r].push_back(m(r, c).real());
      im[r].push_back(m(r, c).imag());
    }
  }
  j["kind"] = "mixed";
  j["re"] = re;
  j["im"] = im;
  return j;
}

void collect_states(const BranchNode& node, std::string& prefix, nlohmann::json& out) {
  if (node.post_state) out[prefix.empty() ? "root" : prefix] = state_json(*node.post_state);
  for (const auto& c : node.children) {
    prefix.push_back(c.outcome > 0 ? '+' : '-');
    collect_states(c, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

BranchTree::BranchTree(BranchNode root, std::vector<ModularSetting> settings)
    : root_(std::move(root)), settings_(std::move(settings)) {}

const BranchNode* BranchTree::find(std::span<const int> outcomes) const {
  const BranchNode* node = &root_;
  for (int o : outcomes) {
    if (o != 1 && o != -1) throw DomainError("outcome must be +1 or -1");
    if (node->children.empty()) return nullptr;
    node = &node->children[o > 0 ? 0 : 1];
  }
  return node;
}

double BranchTree::joint(std::span<const int> outcomes) const {
  const BranchNode* node = find(outcomes);
  return node ? node->probability : 0.0;
}

double BranchTree::marginal_last(int outcome) const {
  const char want = outcome > 0 ? '+' : '-';
  double total = 0.0;
  for (const auto& [key, p] : leaf_probabilities()) {
    if (!key.empty() && key.back() == want) total += p;
  }
  return total;
}

double BranchTree::correlator() const {
  double total = 0.0;
  for (const auto& [key, p] : leaf_probabilities()) {
    int sign = 1;
    for (char c : key) sign *= (c == '+') ? 1 : -1;
    total += sign * p;
  }
  return total;
}

std::map<std::string, double> BranchTree::leaf_probabilities() const {
  std::map<std::string, double> out;
  std::string prefix;
  collect_leaves(root_, prefix, depth(), out);
  return out;
}

std::string outcome_key(std::span<const int> outcomes) {
  std::string key;
  for (int o : outcomes) key.push_back(o > 0 ? '+' : '-');
  return key;
}

BranchTree measure_sequence(const State& state, std::span<const ModularSetting> settings) {
  BranchNode root;
  root.post_state = state;
  std::vector<KrausCache> caches;
  if (std::holds_alternative<MixedState>(state)) {
    for (const auto& s : settings) caches.emplace_back(s, state_dim(state));
  }
  expand(root, settings, caches, 0);
  return BranchTree(std::move(root), {settings.begin(), settings.end()});
}

std::map<std::string, std::uint64_t> sample_shots(const BranchTree& tree, std::uint64_t n_shots,
                                                  std::uint64_t seed) {
  std::map<std::string, std::uint64_t> counts;
  if (n_shots == 0) return counts;
  std::mt19937_64 rng(seed);
  std::uint64_t remaining = n_shots;
  double mass = 1.0;
  const auto leaves = tree.leaf_probabilities();
  std::size_t index = 0;
  for (const auto& [key, p] : leaves) {
    ++index;
    std::uint64_t k = 0;
    if (index == leaves.size()) {
      k = remaining;
    } else if (remaining > 0 && p > 0) {
      const double q = std::clamp(p / mass, 0.0, 1.0);
      std::binomial_distribution<std::uint64_t> draw(remaining, q);
      k = draw(rng);
    }
    mass -= p;
    remaining -= k;
    if (k > 0) counts[key] = k;
  }
  return counts;
}

std::map<std::string, std::uint64_t> sample_shots(const State& state, std::span<const ModularSetting> settings,
                                                  std::uint64_t n_shots, std::uint64_t seed) {
  if (n_shots == 0) return {};
  return sample_shots(measure_sequence(state, settings), n_shots, seed);
}

nlohmann::json to_json(const BranchTree& tree, bool include_states) {
  nlohmann::json j;
  auto& settings = j["settings"] = nlohmann::json::array();
  for (const auto& s : tree.settings()) {
    settings.push_back({{"alpha_re", s.alpha.real()},
                        {"alpha_im", s.alpha.imag()},
                        {"phase", s.phase},
                        {"variant", variant_name(s.variant)}});
  }
  j["probabilities"] = tree.leaf_probabilities();
  if (include_states) {
    nlohmann::json states = nlohmann::json::object();
    std::string prefix;
    collect_states(tree.root(), prefix, states);
    j["states"] = std::move(states);
  }
  return j;
}

SitMeasurement measure_sit(const State& state, const ModularSetting& a, const ModularSetting& b) {
  const ModularSetting alone[] = {b};
  const ModularSetting both[] = {a, b};
  const BranchTree tb = measure_sequence(state, alone);
  const BranchTree tab = measure_sequence(state, both);
  SitMeasurement m;
  m.p_b_alone = tb.marginal_last(1);
  m.p_b_after_a = tab.marginal_last(1);
  m.sit = m.p_b_alone - m.p_b_after_a;
  m.kappa = classical_fidelity(std::array<double, 2>{m.p_b_alone, 1.0 - m.p_b_alone}, std::array<double, 2>{m.p_b_after_a, 1.0 - m.p_b_after_a});
  m.correlator = tab.correlator();
  return m;
}

}  // namespace modvar
