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

#include "modvar_cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "modvar/lgi.hpp"

namespace modvar::cli {

namespace {

// A YAML node together with its dotted path, so errors name the field.
class Field {
 public:
  Field(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const YAML::Node& node() const { return node_; }
  bool defined() const { return node_.IsDefined() && !node_.IsNull(); }

  [[noreturn]] void fail(const std::string& message) const { throw ConfigError(path_.empty() ? "<root>" : path_, message); }

  Field child(const std::string& key) const {
    if (!node_.IsMap()) fail("expected a mapping");
    return Field(node_[key], path_.empty() ? key : path_ + "." + key);
  }
  Field at(std::size_t i) const { return Field(node_[i], path_ + "[" + std::to_string(i) + "]"); }

  bool has(const std::string& key) const { return node_.IsMap() && node_[key].IsDefined() && !node_[key].IsNull(); }

  void only_keys(std::initializer_list<const char*> allowed) const {
    if (!node_.IsMap()) fail("expected a mapping");
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!keys.count(key)) throw ConfigError(path_.empty() ? key : path_ + "." + key, "unknown field");
    }
  }

  double as_double() const {
    if (!defined()) fail("required field is missing");
    if (!node_.IsScalar()) fail("expected a number");
    double v = 0.0;
    if (!YAML::convert<double>::decode(node_, v) || !std::isfinite(v)) fail("expected a finite number");
    return v;
  }
  long long as_int() const {
    if (!defined()) fail("required field is missing");
    long long v = 0;
    if (!node_.IsScalar() || !YAML::convert<long long>::decode(node_, v)) fail("expected an integer");
    return v;
  }
  std::string as_string() const {
    if (!defined()) fail("required field is missing");
    if (!node_.IsScalar()) fail("expected a string");
    return node_.as<std::string>();
  }
  bool as_bool() const {
    bool v = false;
    if (!node_.IsScalar() || !YAML::convert<bool>::decode(node_, v)) fail("expected true or false");
    return v;
  }

  // Scalar (real), [re, im] or {abs, arg}.
  cplx as_complex() const {
    if (!defined()) fail("required field is missing");
    if (node_.IsScalar()) return {as_double(), 0.0};
    if (node_.IsSequence()) {
      if (node_.size() != 2) fail("complex value must be [re, im]");
      return {at(0).as_double(), at(1).as_double()};
    }
    only_keys({"abs", "arg"});
    const double r = child("abs").as_double();
    if (r < 0.0) child("abs").fail("must be >= 0");
    return std::polar(r, child("arg").as_double());
  }

  double number(const std::string& key, double fallback) const { return has(key) ? child(key).as_double() : fallback; }
  double number(const std::string& key) const { return child(key).as_double(); }

  double number_in(const std::string& key, double lo, double hi, std::optional<double> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      child(key).fail("required field is missing");
    }
    const double v = child(key).as_double();
    if (v < lo || v > hi) {
      std::ostringstream msg;
      msg << "must lie in [" << lo << ", " << hi << "], got " << v;
      child(key).fail(msg.str());
    }
    return v;
  }

  long long integer_in(const std::string& key, long long lo, long long hi, std::optional<long long> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      child(key).fail("required field is missing");
    }
    const long long v = child(key).as_int();
    if (v < lo || v > hi) {
      child(key).fail("must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(v));
    }
    return v;
  }

  std::vector<double> numbers() const {
    if (node_.IsScalar()) return {as_double()};
    if (!node_.IsSequence() || node_.size() == 0) fail("expected a number or a non-empty list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node_.size(); ++i) out.push_back(at(i).as_double());
    return out;
  }

 private:
  YAML::Node node_;
  std::string path_;
};

constexpr double kMaxDisplacement = 12.0;

void check_displacement(const Field& f, cplx alpha) {
  if (std::abs(alpha) > kMaxDisplacement) f.fail("displacement magnitude must be <= 12");
}

StateSpec parse_state(const Field& f) {
  if (!f.defined()) f.fail("required field is missing");
  const std::string type = f.child("type").as_string();
  if (type == "vacuum") {
    f.only_keys({"type"});
    return StateSpec::vacuum();
  }
  if (type == "fock") {
    f.only_keys({"type", "n"});
    return StateSpec::fock(static_cast<int>(f.integer_in("n", 0, 200)));
  }
  if (type == "coherent") {
    f.only_keys({"type", "alpha"});
    const cplx a = f.child("alpha").as_complex();
    check_displacement(f.child("alpha"), a);
    return StateSpec::coherent(a);
  }
  if (type == "squeezed") {
    f.only_keys({"type", "xi"});
    const cplx xi = f.child("xi").as_complex();
    if (std::abs(xi) > 2.5) f.child("xi").fail("squeezing magnitude must be <= 2.5");
    return StateSpec::squeezed(xi);
  }
  if (type == "thermal") {
    f.only_keys({"type", "nbar"});
    return StateSpec::thermal(f.number_in("nbar", 0.0, 20.0));
  }
  if (type == "cat") {
    f.only_keys({"type", "beta", "base"});
    const cplx beta = f.child("beta").as_complex();
    check_displacement(f.child("beta"), beta);
    StateSpec base = f.has("base") ? parse_state(f.child("base")) : StateSpec::vacuum();
    if (base.kind == StateSpec::Kind::Cat || base.kind == StateSpec::Kind::Gkp) {
      f.child("base").child("type").fail("cat base must be vacuum, fock, coherent, squeezed or thermal");
    }
    return StateSpec::cat(beta, base);
  }
  if (type == "gkp") {
    f.only_keys({"type", "spacing", "envelope"});
    const double s = f.number_in("spacing", 0.5, 6.0);
    const double d = f.number_in("envelope", 0.2, 1.0);
    return StateSpec::gkp(s, d);
  }
  f.child("type").fail("unknown state type '" + type + "'");
}

Variant parse_variant(const Field& f, Variant fallback) {
  if (!f.defined()) return fallback;
  const std::string v = f.as_string();
  if (v == "symmetric") return Variant::Symmetric;
  if (v == "asymmetric") return Variant::Asymmetric;
  f.fail("expected 'symmetric' or 'asymmetric'");
}

MeasurementSpec parse_measurement(const Field& f, Variant fallback = Variant::Symmetric) {
  if (!f.defined()) f.fail("required field is missing");
  f.only_keys({"variant", "alpha", "phase", "outcome"});
  MeasurementSpec m;
  m.setting.variant = parse_variant(f.child("variant"), fallback);
  m.setting.alpha = f.child("alpha").as_complex();
  check_displacement(f.child("alpha"), m.setting.alpha);
  m.setting.phase = f.number("phase", 0.0);
  if (f.has("outcome")) {
    const auto o = f.child("outcome").as_int();
    if (o != 1 && o != -1) f.child("outcome").fail("must be 1 or -1");
    m.outcome = static_cast<int>(o);
  }
  return m;
}

Range parse_range(const Field& f, int max_points = 100000) {
  if (!f.defined()) f.fail("required field is missing");
  f.only_keys({"from", "to", "points"});
  Range r;
  r.from = f.number("from");
  r.to = f.number("to");
  r.points = static_cast<int>(f.integer_in("points", 1, max_points));
  if (r.points > 1 && r.to <= r.from) f.child("to").fail("must exceed 'from'");
  return r;
}

std::vector<double> parse_amp_grid(const Field& f) {
  if (!f.defined()) f.fail("required field is missing");
  if (f.node().IsSequence()) {
    auto v = f.numbers();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] <= 0.0 || v[i] > 6.0) f.at(i).fail("amp must lie in (0, 6]");
      if (i > 0 && v[i] <= v[i - 1]) f.at(i).fail("amps must be strictly ascending");
    }
    return v;
  }
  f.only_keys({"from", "to", "step"});
  const double from = f.number_in("from", 1e-3, 6.0);
  const double to = f.number_in("to", from, 6.0);
  const double step = f.number_in("step", 1e-3, 6.0);
  if ((to - from) / step > 10000) f.child("step").fail("grid would exceed 10000 points");
  return amp_grid(from, to, step);
}

OptimizeOptions parse_optimizer(const Field& f) {
  OptimizeOptions o;
  if (!f.defined()) return o;
  f.only_keys({"max_iterations", "random_starts", "seed"});
  o.max_iterations = static_cast<int>(f.integer_in("max_iterations", 10, 1000000, o.max_iterations));
  o.random_starts = static_cast<int>(f.integer_in("random_starts", 1, 10000, o.random_starts));
  o.seed = static_cast<std::uint64_t>(f.integer_in("seed", 0, std::numeric_limits<long long>::max(),
                                                   static_cast<long long>(o.seed)));
  return o;
}

NoiseParams parse_noise(const Field& f) {
  f.only_keys({"dephasing_rate", "linewidth_fwhm", "phase_offset", "n_phase_samples", "sdf_time_per_unit"});
  NoiseParams p;
  p.dephasing_rate = f.number_in("dephasing_rate", 0.0, 1e4, p.dephasing_rate);
  p.linewidth_fwhm = f.number_in("linewidth_fwhm", 0.0, 1e5, p.linewidth_fwhm);
  p.phase_offset = f.number_in("phase_offset", 0.0, kPi, p.phase_offset);
  p.n_phase_samples = static_cast<int>(f.integer_in("n_phase_samples", 1, 1000000, p.n_phase_samples));
  // 1/0.035 .. 1/0.028 µs per unit displacement
  p.sdf_time_per_unit = f.number_in("sdf_time_per_unit", 1.0 / OscillatorConstants::kMaxDisplacementRate,
                                    1.0 / OscillatorConstants::kMinDisplacementRate, p.sdf_time_per_unit);
  return p;
}

SitScanConfig parse_sit_scan(const Field& root) {
  SitScanConfig c;
  c.state = parse_state(root.child("state"));
  c.a = parse_measurement(root.child("a"));
  c.b = parse_measurement(root.child("b"));
  const Field scan = root.child("scan");
  if (!scan.defined()) scan.fail("required field is missing");
  scan.only_keys({"parameter", "from", "to", "points"});
  const std::string p = scan.child("parameter").as_string();
  if (p == "squeeze_r") {
    c.parameter = SitScanConfig::Parameter::SqueezeR;
    if (c.state.kind != StateSpec::Kind::Squeezed) root.child("state").child("type").fail("squeeze_r scans need a squeezed state");
  } else if (p == "alpha_a_re") {
    c.parameter = SitScanConfig::Parameter::AlphaARe;
  } else if (p == "alpha_a_im") {
    c.parameter = SitScanConfig::Parameter::AlphaAIm;
  } else if (p == "alpha_a_abs") {
    c.parameter = SitScanConfig::Parameter::AlphaAAbs;
  } else if (p == "alpha_a_arg") {
    c.parameter = SitScanConfig::Parameter::AlphaAArg;
  } else if (p == "phase_b") {
    c.parameter = SitScanConfig::Parameter::PhaseB;
  } else {
    scan.child("parameter").fail("expected squeeze_r, alpha_a_re, alpha_a_im, alpha_a_abs, alpha_a_arg or phase_b");
  }
  Range r;
  r.from = scan.number("from");
  r.to = scan.number("to");
  r.points = static_cast<int>(scan.integer_in("points", 1, 100000));
  if (r.points > 1 && r.to <= r.from) scan.child("to").fail("must exceed 'from'");
  if (c.parameter == SitScanConfig::Parameter::SqueezeR && (r.from < 0.0 || r.to > 2.5)) {
    scan.child("to").fail("squeeze_r must stay within [0, 2.5]");
  }
  if (c.parameter != SitScanConfig::Parameter::SqueezeR && c.parameter != SitScanConfig::Parameter::PhaseB &&
      c.parameter != SitScanConfig::Parameter::AlphaAArg &&
      std::max(std::abs(r.from), std::abs(r.to)) > kMaxDisplacement) {
    scan.child("to").fail("displacement magnitude must be <= 12");
  }
  c.scan = r;
  return c;
}

NsitSuiteConfig parse_nsit_suite(const Field& root) {
  NsitSuiteConfig c;
  c.alpha_a = root.child("alpha_a").as_complex();
  c.alpha_b = root.child("alpha_b").as_complex();
  check_displacement(root.child("alpha_a"), c.alpha_a);
  check_displacement(root.child("alpha_b"), c.alpha_b);
  if (std::abs(c.alpha_b) == 0.0) root.child("alpha_b").fail("must be nonzero");
  if (root.has("alpha_a_compare")) {
    c.alpha_a_compare = root.child("alpha_a_compare").as_complex();
    check_displacement(root.child("alpha_a_compare"), *c.alpha_a_compare);
  }
  c.phases = static_cast<int>(root.integer_in("phases", 1, 10000, 50));
  c.histogram_bins = static_cast<int>(root.integer_in("histogram_bins", 1, 1000, 20));
  const Field bases = root.child("bases");
  if (!bases.node().IsSequence() || bases.node().size() == 0) bases.fail("expected a non-empty list of states");
  for (std::size_t i = 0; i < bases.node().size(); ++i) {
    StateSpec s = parse_state(bases.at(i));
    if (s.kind == StateSpec::Kind::Cat || s.kind == StateSpec::Kind::Gkp) bases.at(i).child("type").fail("base must not be a cat or gkp state");
    c.bases.push_back(s);
  }
  return c;
}

CorrelatorMapConfig parse_correlator_map(const Field& root) {
  CorrelatorMapConfig c;
  c.state = parse_state(root.child("state"));
  c.variant = parse_variant(root.child("variant"), Variant::Asymmetric);
  c.a = parse_measurement(root.child("a"), c.variant);
  c.a.setting.variant = c.variant;
  c.phase_b = root.number("phase_b", 0.0);
  const Field grid = root.child("grid");
  if (!grid.defined()) grid.fail("required field is missing");
  grid.only_keys({"re", "im"});
  c.re = parse_range(grid.child("re"), 2001);
  c.im = parse_range(grid.child("im"), 2001);
  for (const auto* r : {&c.re, &c.im}) {
    if (std::max(std::abs(r->from), std::abs(r->to)) > kMaxDisplacement) grid.fail("grid must stay within |value| <= 12");
  }
  return c;
}

LgiSweepConfig parse_lgi_sweep(const Field& root) {
  LgiSweepConfig c;
  c.amps = parse_amp_grid(root.child("amp"));
  c.nbar = root.has("nbar") ? root.child("nbar").numbers() : std::vector<double>{0.0};
  for (std::size_t i = 0; i < c.nbar.size(); ++i) {
    if (c.nbar[i] < 0.0 || c.nbar[i] > 5.0) root.child("nbar").fail("nbar must lie in [0, 5]");
  }
  if (root.has("noise")) c.noise = parse_noise(root.child("noise"));
  c.noise_amp_step = root.number_in("noise_amp_step", 0.0, 6.0, 0.0);
  if (c.noise_amp_step > 0.0 && !c.noise) root.child("noise_amp_step").fail("requires a noise block");
  c.optimizer = parse_optimizer(root.child("optimizer"));
  return c;
}

LgiOptimizeConfig parse_lgi_optimize(const Field& root) {
  LgiOptimizeConfig c;
  c.amps = parse_amp_grid(root.child("amp"));
  c.nbar = root.number_in("nbar", 0.0, 5.0, 0.0);
  if (root.has("squeeze_r")) c.squeeze_r = root.number_in("squeeze_r", 0.0, 2.0);
  if (root.has("compare_squeeze")) c.compare_squeeze = root.number_in("compare_squeeze", 0.0, 2.0);
  if (c.squeeze_r && c.compare_squeeze) root.child("compare_squeeze").fail("cannot be combined with squeeze_r");
  c.optimizer = parse_optimizer(root.child("optimizer"));
  return c;
}

WignerConfig parse_wigner(const Field& root) {
  WignerConfig c;
  c.state = parse_state(root.child("state"));
  if (root.has("measurements")) {
    const Field ms = root.child("measurements");
    if (!ms.node().IsSequence()) ms.fail("expected a list of measurements");
    if (ms.node().size() > 6) ms.fail("at most 6 measurements");
    for (std::size_t i = 0; i < ms.node().size(); ++i) c.measurements.push_back(parse_measurement(ms.at(i)));
  }
  if (root.has("extent")) c.extent = root.number_in("extent", 0.1, 30.0);
  c.resolution = static_cast<int>(root.integer_in("resolution", 3, 2001, 201));
  return c;
}

ClassicalRamseyConfig parse_classical(const Field& root) {
  ClassicalRamseyConfig c;
  c.a0 = root.child("a0").numbers();
  c.sigma = root.number_in("sigma", 0.0, 1e7);
  c.frequency = root.number_in("frequency", 1e-3, 1e7, 50.0);
  c.phase = root.number("phase", 0.0);
  c.t_max = root.number_in("t_max", 1e-9, 1e3, 0.02);
  c.points = static_cast<int>(root.integer_in("points", 2, 1000000, 401));
  c.mc_samples = static_cast<std::uint64_t>(root.integer_in("mc_samples", 0, 100000000, 0));
  return c;
}

ThreeLevelConfig parse_three_level(const Field& root) {
  ThreeLevelConfig c;
  c.cases = static_cast<int>(root.integer_in("cases", 1, 100000, 100));
  c.max_alpha = root.number_in("max_alpha", 0.0, 5.0, 3.0);
  return c;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node doc;
  try {
    doc = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<document>", std::string("YAML parse error: ") + e.what());
  }
  const Field root(doc, "");
  if (!doc.IsMap()) root.fail("expected a mapping at the top level");

  ExperimentConfig cfg;
  cfg.source = text;
  cfg.kind = root.child("kind").as_string();
  cfg.name = root.has("name") ? root.child("name").as_string() : cfg.kind;
  if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos) {
    root.child("name").fail("must be a non-empty file stem without path separators");
  }
  cfg.seed = static_cast<std::uint64_t>(root.integer_in("seed", 0, std::numeric_limits<long long>::max(), 1));
  if (root.has("dim")) cfg.dim = static_cast<int>(root.integer_in("dim", 2, 2000));
  if (root.has("truncation")) {
    const Field t = root.child("truncation");
    t.only_keys({"ceiling", "margin", "leakage_threshold"});
    cfg.policy.ceiling = static_cast<int>(t.integer_in("ceiling", 10, 2000, cfg.policy.ceiling));
    cfg.policy.margin = t.number_in("margin", 0.0, 20.0, cfg.policy.margin);
    cfg.policy.leakage_threshold = t.number_in("leakage_threshold", 1e-16, 1e-2, cfg.policy.leakage_threshold);
  }

  const std::initializer_list<const char*> common = {"kind", "name", "seed", "dim", "truncation"};
  auto allow = [&](std::initializer_list<const char*> extra) {
    std::vector<const char*> keys(common);
    keys.insert(keys.end(), extra);
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : doc) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) throw ConfigError(key, "unknown field for kind '" + cfg.kind + "'");
    }
  };

  if (cfg.kind == "sit-scan") {
    allow({"state", "a", "b", "scan"});
    cfg.body = parse_sit_scan(root);
  } else if (cfg.kind == "nsit-suite") {
    allow({"alpha_a", "alpha_b", "alpha_a_compare", "phases", "bases", "histogram_bins"});
    cfg.body = parse_nsit_suite(root);
  } else if (cfg.kind == "correlator-map") {
    allow({"state", "variant", "a", "phase_b", "grid"});
    cfg.body = parse_correlator_map(root);
  } else if (cfg.kind == "lgi-sweep") {
    allow({"amp", "nbar", "noise", "noise_amp_step", "optimizer"});
    cfg.body = parse_lgi_sweep(root);
  } else if (cfg.kind == "lgi-optimize") {
    allow({"amp", "nbar", "squeeze_r", "compare_squeeze", "optimizer"});
    cfg.body = parse_lgi_optimize(root);
  } else if (cfg.kind == "wigner") {
    allow({"state", "measurements", "extent", "resolution"});
    cfg.body = parse_wigner(root);
  } else if (cfg.kind == "classical-ramsey") {
    allow({"a0", "sigma", "frequency", "phase", "t_max", "points", "mc_samples"});
    cfg.body = parse_classical(root);
  } else if (cfg.kind == "three-level-check") {
    allow({"cases", "max_alpha"});
    cfg.body = parse_three_level(root);
  } else {
    root.child("kind").fail("unknown experiment kind '" + cfg.kind + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace modvar::cli
