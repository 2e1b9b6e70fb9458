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

#include "modvar_cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "modvar/branch_tree.hpp"
#include "modvar/classical.hpp"
#include "modvar/closed_form.hpp"
#include "modvar/errors.hpp"
#include "modvar/lgi.hpp"
#include "modvar/noise.hpp"
#include "modvar/three_level.hpp"
#include "modvar/wigner.hpp"

namespace modvar::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> columns) : width_(columns.size()) {
    std::size_t i = 0;
    for (const auto& c : columns) out_ << (i++ ? "," : "") << c;
    out_ << '\n';
  }
  Csv& cell(double v) { return text(format_number(v)); }
  Csv& cell(int v) { return text(std::to_string(v)); }
  Csv& text(const std::string& s) {
    out_ << (col_++ ? "," : "") << s;
    if (col_ == width_) {
      out_ << '\n';
      col_ = 0;
      ++rows_;
    }
    return *this;
  }
  std::string str() const { return out_.str(); }
  int rows() const { return rows_; }

 private:
  std::ostringstream out_;
  std::size_t width_;
  std::size_t col_ = 0;
  int rows_ = 0;
};

int resolve_threads(int requested) {
  return requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int pick_dim(const ExperimentConfig& cfg, const RunOptions& opt, int automatic) {
  if (opt.dim_override) return *opt.dim_override;
  if (cfg.dim) return *cfg.dim;
  return automatic;
}

// Closed-form S for a same-variant pair, NaN otherwise.
double closed_sit(const State& state, const ModularSetting& a, const ModularSetting& b) {
  if (a.variant != b.variant) return kNaN;
  const auto m_b = OverlapValue::from(overlap_matrix(state, b.alpha));
  return a.variant == Variant::Symmetric ? sit_symmetric(a.alpha, b.alpha, m_b, b.phase)
                                         : sit_asymmetric(a.alpha, b.alpha, b.phase, m_b);
}

double closed_corr(const State& state, const ModularSetting& a, const ModularSetting& b) {
  if (a.variant != b.variant) return kNaN;
  const auto m_minus = OverlapValue::from(overlap_matrix(state, a.alpha - b.alpha));
  const auto m_plus = OverlapValue::from(overlap_matrix(state, a.alpha + b.alpha));
  return a.variant == Variant::Symmetric ? corr_symmetric(m_minus, m_plus, a.phase, b.phase)
                                         : corr_asymmetric(a.alpha, b.alpha, a.phase, b.phase, m_minus, m_plus);
}

json measurement_json(const ModularSetting& s) {
  return {{"variant", variant_name(s.variant)}, {"alpha", {s.alpha.real(), s.alpha.imag()}}, {"phase", s.phase}};
}

// ---------------------------------------------------------------- sit-scan

RunResult run_sit_scan(const ExperimentConfig& cfg, const SitScanConfig& c, const RunOptions& opt, int threads) {
  using P = SitScanConfig::Parameter;
  struct Point {
    StateSpec spec;
    ModularSetting a, b;
  };
  std::vector<Point> points;
  for (int i = 0; i < c.scan.points; ++i) {
    const double v = c.scan.at(i);
    Point p{c.state, c.a.setting, c.b.setting};
    switch (c.parameter) {
      case P::SqueezeR: {
        const double dir = std::abs(c.state.xi) > 0.0 ? std::arg(c.state.xi) : 0.0;
        p.spec = StateSpec::squeezed(std::polar(v, dir));
        break;
      }
      case P::AlphaARe: p.a.alpha = {v, c.a.setting.alpha.imag()}; break;
      case P::AlphaAIm: p.a.alpha = {c.a.setting.alpha.real(), v}; break;
      case P::AlphaAAbs: {
        const double dir = std::abs(c.a.setting.alpha) > 0.0 ? std::arg(c.a.setting.alpha) : 0.0;
        p.a.alpha = std::polar(v, dir);
        break;
      }
      case P::AlphaAArg: p.a.alpha = std::polar(std::abs(c.a.setting.alpha), v); break;
      case P::PhaseB: p.b.phase = v; break;
    }
    points.push_back(p);
  }
  int automatic = 0;
  for (const auto& p : points) {
    automatic = std::max(automatic, required_dim(p.spec, p.a.reach() + p.b.reach(), cfg.policy));
  }
  const int dim = pick_dim(cfg, opt, automatic);

  struct Row {
    SitMeasurement m;
    double s_closed = 0.0, c_closed = 0.0, m_b = 0.0, phi = 0.0, leak = 0.0;
  };
  std::vector<Row> rows(points.size());
  parallel_for(static_cast<int>(points.size()), threads, [&](int i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    const State state = make_state(p.spec, dim, cfg.policy);
    Row& r = rows[static_cast<std::size_t>(i)];
    r.m = measure_sit(state, p.a, p.b);
    r.s_closed = closed_sit(state, p.a, p.b);
    r.c_closed = closed_corr(state, p.a, p.b);
    r.m_b = std::abs(overlap_matrix(state, p.b.alpha));
    r.phi = geometric_phase(p.a.alpha, p.b.alpha);
    r.leak = leakage(state);
  });

  Csv csv({"value", "alpha_a_re", "alpha_a_im", "phase_b", "P_B", "P_BA", "S", "S_closed", "kappa", "C", "C_closed",
           "m_b_abs", "Phi"});
  double max_dev = 0.0, max_leak = 0.0;
  std::vector<double> zeros;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& p = points[i];
    csv.cell(c.scan.at(static_cast<int>(i))).cell(p.a.alpha.real()).cell(p.a.alpha.imag()).cell(p.b.phase);
    csv.cell(r.m.p_b_alone).cell(r.m.p_b_after_a).cell(r.m.sit).cell(r.s_closed).cell(r.m.kappa);
    csv.cell(r.m.correlator).cell(r.c_closed).cell(r.m_b).cell(r.phi);
    if (!std::isnan(r.s_closed)) max_dev = std::max(max_dev, std::abs(r.m.sit - r.s_closed));
    max_leak = std::max(max_leak, r.leak);
    if (std::abs(r.m.sit) < 1e-9) zeros.push_back(c.scan.at(static_cast<int>(i)));
  }
  json diag = {{"max_abs_sit_minus_closed", max_dev},
               {"max_input_leakage", max_leak},
               {"sit_zeros", zeros},
               {"a", measurement_json(c.a.setting)},
               {"b", measurement_json(c.b.setting)},
               {"state", c.state.describe()}};
  return {csv.str(), {{"dim", dim}, {"rows", csv.rows()}, {"diagnostics", diag}}};
}

// ------------------------------------------------------------- nsit-suite

json histogram(const std::vector<double>& values, int bins) {
  std::vector<int> counts(static_cast<std::size_t>(bins), 0);
  double sum = 0.0, sum2 = 0.0, max_abs = 0.0;
  for (double v : values) {
    int k = static_cast<int>(std::floor((v + 1.0) / 2.0 * bins));
    k = std::clamp(k, 0, bins - 1);
    ++counts[static_cast<std::size_t>(k)];
    sum += v;
    sum2 += v * v;
    max_abs = std::max(max_abs, std::abs(v));
  }
  const double n = static_cast<double>(values.size());
  const double mean = sum / n;
  return {{"range", {-1.0, 1.0}},
          {"counts", counts},
          {"mean", mean},
          {"std", std::sqrt(std::max(0.0, sum2 / n - mean * mean))},
          {"max_abs", max_abs}};
}

RunResult run_nsit_suite(const ExperimentConfig& cfg, const NsitSuiteConfig& c, const RunOptions& opt, int threads) {
  const auto a = ModularSetting::symmetric(c.alpha_a);
  const auto b = ModularSetting::symmetric(c.alpha_b);
  const std::optional<ModularSetting> cmp =
      c.alpha_a_compare ? std::optional(ModularSetting::symmetric(*c.alpha_a_compare)) : std::nullopt;
  const double amp_b = std::abs(c.alpha_b);
  const double reach_a = std::max(a.reach(), cmp ? cmp->reach() : 0.0);

  struct Item {
    std::size_t base;
    double phi_i;
    StateSpec spec;
  };
  std::vector<Item> items;
  int automatic = 0;
  for (std::size_t bi = 0; bi < c.bases.size(); ++bi) {
    for (int k = 0; k < c.phases; ++k) {
      const double phi_i = 2.0 * kPi * k / c.phases;
      Item it{bi, phi_i, StateSpec::cat(std::polar(amp_b, phi_i), c.bases[bi])};
      automatic = std::max(automatic, required_dim(it.spec, reach_a + b.reach(), cfg.policy));
      items.push_back(std::move(it));
    }
  }
  const int dim = pick_dim(cfg, opt, automatic);

  struct Row {
    SitMeasurement m;
    double s_cmp = kNaN;
  };
  std::vector<Row> rows(items.size());
  parallel_for(static_cast<int>(items.size()), threads, [&](int i) {
    const auto& it = items[static_cast<std::size_t>(i)];
    const State state = make_state(it.spec, dim, cfg.policy);
    auto& r = rows[static_cast<std::size_t>(i)];
    r.m = measure_sit(state, a, b);
    if (cmp) r.s_cmp = measure_sit(state, *cmp, b).sit;
  });

  Csv csv({"phi_I", "base", "P_B", "P_BA", "S", "S_compare"});
  std::vector<double> s, s_cmp;
  for (std::size_t i = 0; i < items.size(); ++i) {
    csv.cell(items[i].phi_i).text(c.bases[items[i].base].describe());
    csv.cell(rows[i].m.p_b_alone).cell(rows[i].m.p_b_after_a).cell(rows[i].m.sit).cell(rows[i].s_cmp);
    s.push_back(rows[i].m.sit);
    if (cmp) s_cmp.push_back(rows[i].s_cmp);
  }
  json diag = {{"states", items.size()},
               {"geometric_phase", geometric_phase(c.alpha_a, c.alpha_b)},
               {"histogram", histogram(s, c.histogram_bins)}};
  if (cmp) {
    diag["compare_alpha_a"] = {c.alpha_a_compare->real(), c.alpha_a_compare->imag()};
    diag["compare_histogram"] = histogram(s_cmp, c.histogram_bins);
  }
  return {csv.str(), {{"dim", dim}, {"rows", csv.rows()}, {"diagnostics", diag}}};
}

// --------------------------------------------------------- correlator-map

RunResult run_correlator_map(const ExperimentConfig& cfg, const CorrelatorMapConfig& c, const RunOptions& opt,
                             int threads) {
  const ModularSetting a = c.a.setting;
  const double max_b = std::hypot(std::max(std::abs(c.re.from), std::abs(c.re.to)),
                                  std::max(std::abs(c.im.from), std::abs(c.im.to)));
  const double reach_b = c.variant == Variant::Symmetric ? max_b / 2.0 : max_b;
  const int dim = pick_dim(cfg, opt, required_dim(c.state, a.reach() + reach_b, cfg.policy));
  const State state = make_state(c.state, dim, cfg.policy);

  const int n = c.re.points * c.im.points;
  std::vector<std::array<double, 3>> rows(static_cast<std::size_t>(n));
  parallel_for(n, threads, [&](int idx) {
    const cplx alpha_b(c.re.at(idx / c.im.points), c.im.at(idx % c.im.points));
    const ModularSetting b{alpha_b, c.phase_b, c.variant};
    const std::array<ModularSetting, 2> seq{a, b};
    const double corr = measure_sequence(state, seq).correlator();
    rows[static_cast<std::size_t>(idx)] = {corr, closed_corr(state, a, b), geometric_phase(a.alpha, alpha_b)};
  });

  Csv csv({"alpha_b_re", "alpha_b_im", "C", "C_closed", "Phi"});
  double max_dev = 0.0;
  for (int idx = 0; idx < n; ++idx) {
    const auto& r = rows[static_cast<std::size_t>(idx)];
    csv.cell(c.re.at(idx / c.im.points)).cell(c.im.at(idx % c.im.points)).cell(r[0]).cell(r[1]).cell(r[2]);
    max_dev = std::max(max_dev, std::abs(r[0] - r[1]));
  }
  json diag = {{"max_abs_c_minus_closed", max_dev},
               {"input_leakage", leakage(state)},
               {"a", measurement_json(a)},
               {"state", c.state.describe()}};
  return {csv.str(), {{"dim", dim}, {"rows", csv.rows()}, {"diagnostics", diag}}};
}

// -------------------------------------------------------------- lgi-sweep

json chain_diagnostics(const std::vector<OptimizeResult>& chain) {
  int iterations = 0, restarts = 0;
  bool converged = true;
  for (const auto& r : chain) {
    iterations += r.iterations;
    restarts += r.restarted ? 1 : 0;
    converged = converged && r.converged;
  }
  return {{"points", chain.size()}, {"iterations", iterations}, {"restart_checks", restarts}, {"converged", converged}};
}

bool on_subgrid(double amp, double start, double step) {
  if (step <= 0.0) return true;
  const double k = (amp - start) / step;
  return std::abs(k - std::round(k)) < 1e-6;
}

RunResult run_lgi_sweep(const ExperimentConfig& cfg, const LgiSweepConfig& c, const RunOptions& opt, int threads) {
  std::vector<std::vector<OptimizeResult>> chains(c.nbar.size());
  parallel_for(static_cast<int>(c.nbar.size()), threads, [&](int i) {
    chains[static_cast<std::size_t>(i)] = optimize_chain(c.amps, c.nbar[static_cast<std::size_t>(i)], std::nullopt, c.optimizer);
  });

  struct NoiseJob {
    std::size_t chain, point;
  };
  std::vector<NoiseJob> jobs;
  if (c.noise) {
    for (std::size_t ci = 0; ci < chains.size(); ++ci) {
      for (std::size_t pi = 0; pi < c.amps.size(); ++pi) {
        if (on_subgrid(c.amps[pi], c.amps.front(), c.noise_amp_step)) jobs.push_back({ci, pi});
      }
    }
  }
  std::vector<std::optional<NoisyLgiPoint>> noisy(chains.size() * c.amps.size());
  const std::uint64_t seed = opt.seed.value_or(cfg.seed);
  parallel_for(static_cast<int>(jobs.size()), threads, [&](int j) {
    const auto& job = jobs[static_cast<std::size_t>(j)];
    noisy[job.chain * c.amps.size() + job.point] =
        noisy_lgi_value(chains[job.chain][job.point].settings, *c.noise, seed + 7919u * job.point, cfg.policy);
  });

  Csv csv({"nbar", "amp", "theta_A", "theta_B", "theta_C", "phi_A", "phi_B", "phi_C", "L", "TS", "L_pen", "L_noisy",
           "TS_noisy", "L_pen_noisy", "L_noisy_se"});
  json diag = json::object();
  json chain_diag = json::array();
  int max_dim = 0;
  for (std::size_t ci = 0; ci < chains.size(); ++ci) {
    for (std::size_t pi = 0; pi < c.amps.size(); ++pi) {
      const auto& r = chains[ci][pi];
      csv.cell(c.nbar[ci]).cell(r.settings.amp);
      for (double t : r.settings.theta) csv.cell(t);
      for (double p : r.settings.phi) csv.cell(p);
      csv.cell(r.value.l).cell(r.value.ts).cell(r.value.l_penalized);
      if (const auto& np = noisy[ci * c.amps.size() + pi]) {
        csv.cell(np->noisy.l).cell(np->noisy.ts).cell(np->noisy.l_penalized).cell(np->l_std_error);
        max_dim = std::max(max_dim, np->dim);
      } else {
        csv.text("").text("").text("").text("");
      }
    }
    auto d = chain_diagnostics(chains[ci]);
    d["nbar"] = c.nbar[ci];
    chain_diag.push_back(d);
  }
  diag["chains"] = chain_diag;
  diag["noise_points"] = jobs.size();
  if (c.noise) {
    diag["noise"] = {{"dephasing_rate", c.noise->dephasing_rate},
                     {"linewidth_fwhm", c.noise->linewidth_fwhm},
                     {"phase_offset", c.noise->phase_offset},
                     {"n_phase_samples", c.noise->n_phase_samples},
                     {"sdf_time_per_unit", c.noise->sdf_time_per_unit}};
  }
  // The ideal values come from the Gaussian characteristic function, which
  // needs no truncation; dim records the noisy density matrices.
  return {csv.str(), {{"dim", max_dim}, {"rows", csv.rows()}, {"diagnostics", diag}}};
}

// ----------------------------------------------------------- lgi-optimize

RunResult run_lgi_optimize(const ExperimentConfig&, const LgiOptimizeConfig& c, const RunOptions&) {
  if (c.compare_squeeze) {
    const auto cmp = squeezed_lgi_comparison(c.amps, *c.compare_squeeze, c.optimizer);
    Csv csv({"amp", "L_ground", "L_squeezed", "TS_ground", "TS_squeezed"});
    for (const auto& r : cmp.rows) csv.cell(r.amp).cell(r.l_ground).cell(r.l_squeezed).cell(r.ts_ground).cell(r.ts_squeezed);
    json diag = {{"squeeze_r", *c.compare_squeeze}, {"wave_packet_ratio", cmp.wave_packet_ratio}};
    return {csv.str(), {{"dim", 0}, {"rows", csv.rows()}, {"diagnostics", diag}}};
  }
  const std::optional<cplx> xi = c.squeeze_r ? std::optional<cplx>(*c.squeeze_r) : std::nullopt;
  const auto chain = optimize_chain(c.amps, c.nbar, xi, c.optimizer);
  std::ostringstream out;
  write_settings_csv(out, chain);
  auto diag = chain_diagnostics(chain);
  diag["nbar"] = c.nbar;
  if (c.squeeze_r) diag["squeeze_r"] = *c.squeeze_r;
  return {out.str(), {{"dim", 0}, {"rows", chain.size()}, {"diagnostics", diag}}};
}

// ----------------------------------------------------------------- wigner

std::vector<cplx> initial_centers(const StateSpec& spec) {
  switch (spec.kind) {
    case StateSpec::Kind::Coherent: return {spec.alpha};
    case StateSpec::Kind::Cat: {
      const cplx c0 = spec.base && spec.base->kind == StateSpec::Kind::Coherent ? spec.base->alpha : cplx{};
      return {c0 - spec.alpha / 2.0, c0 + spec.alpha / 2.0};
    }
    default: return {cplx{}};
  }
}

RunResult run_wigner(const ExperimentConfig& cfg, const WignerConfig& c, const RunOptions& opt, int threads) {
  double reach = 0.0;
  std::vector<ModularSetting> settings;
  for (const auto& m : c.measurements) {
    reach += m.setting.reach();
    settings.push_back(m.setting);
  }
  const int dim = pick_dim(cfg, opt, required_dim(c.state, reach, cfg.policy));
  std::vector<State> stages{make_state(c.state, dim, cfg.policy)};
  std::vector<double> branch_probability{1.0};
  for (const auto& m : c.measurements) {
    const auto res = measure_once(stages.back(), m.setting);
    if (res.degenerate(m.outcome)) throw DomainError("wigner: followed branch has vanishing probability");
    branch_probability.push_back(res.probability(m.outcome));
    stages.push_back(*res.post(m.outcome));
  }
  double extent = 0.0;
  if (c.extent) {
    extent = *c.extent;
  } else {
    for (const auto& s : stages) extent = std::max(extent, default_extent(s));
  }

  Csv csv({"stage", "x", "p", "w"});
  json stage_meta = json::array();
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto grid = wigner_grid(stages[k], extent, c.resolution, threads);
    for (std::size_t i = 0; i < grid.x_axis.size(); ++i) {
      for (std::size_t j = 0; j < grid.p_axis.size(); ++j) {
        csv.cell(static_cast<int>(k)).cell(grid.x_axis[i]).cell(grid.p_axis[j]);
        csv.cell(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
    }
    auto meta = wigner_metadata(grid, dim);
    meta["stage"] = k;
    meta["branch_probability"] = branch_probability[k];
    meta["leakage"] = leakage(stages[k]);
    stage_meta.push_back(meta);
  }
  json diag = {{"stages", stage_meta}, {"extent", extent}, {"state", c.state.describe()}};
  const bool all_symmetric = std::all_of(settings.begin(), settings.end(),
                                         [](const ModularSetting& s) { return s.variant == Variant::Symmetric; });
  if (all_symmetric) {
    json lobes = json::array();
    auto centers = initial_centers(c.state);
    lobes.push_back({{"stage", 0}, {"count", centers.size()}, {"max_separation", max_separation(centers)}});
    for (std::size_t k = 0; k < settings.size(); ++k) {
      centers = symmetric_lobe_centers(centers, std::span(settings).subspan(k, 1));
      lobes.push_back({{"stage", k + 1}, {"count", centers.size()}, {"max_separation", max_separation(centers)}});
    }
    diag["lobes"] = lobes;
  }
  return {csv.str(), {{"dim", dim}, {"rows", csv.rows()}, {"diagnostics", diag}}};
}

// ------------------------------------------------------- classical-ramsey

RunResult run_classical(const ExperimentConfig& cfg, const ClassicalRamseyConfig& c, const RunOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(cfg.seed);
  Csv csv({"a0", "T", "Q", "Q_mc"});
  json sequential = json::array();
  for (std::size_t i = 0; i < c.a0.size(); ++i) {
    ClassicalFieldParams p;
    p.a0 = c.a0[i];
    p.sigma = c.sigma;
    p.frequency = c.frequency;
    p.phase = c.phase;
    p.validate();
    for (const auto& pt : classical_trace(p, c.t_max, c.points)) {
      double mc = kNaN;
      if (c.mc_samples > 0) {
        ClassicalFieldParams q = p;
        q.wait = pt.wait;
        mc = classical_q_expect_mc(q, c.mc_samples, seed + i);
      }
      csv.cell(p.a0).cell(pt.wait).cell(pt.q).cell(mc);
    }
    ClassicalFieldParams first = p, second = p;
    first.wait = c.t_max / 2.0;
    second.start = c.t_max / 2.0;
    second.wait = c.t_max / 2.0;
    sequential.push_back({{"a0", p.a0}, {"S", classical_sequential_sit(first, second, ClassicalMode::Analytic)}});
  }
  json diag = {{"sigma", c.sigma}, {"frequency", c.frequency}, {"sequential_sit", sequential}};
  return {csv.str(), {{"dim", 0}, {"rows", csv.rows()}, {"diagnostics", diag}}};
}

// ------------------------------------------------------ three-level-check

double fidelity(const PureState& x, const PureState& y) {
  return std::norm(x.amplitudes().dot(y.amplitudes()));
}

RunResult run_three_level(const ExperimentConfig& cfg, const ThreeLevelConfig& c, const RunOptions& opt, int threads) {
  const std::uint64_t seed = opt.seed.value_or(cfg.seed);
  struct Case {
    StateSpec spec;
    cplx alpha;
    double phi;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Case> cases;
  int automatic = 0;
  for (int i = 0; i < c.cases; ++i) {
    StateSpec spec;
    switch (i % 4) {
      case 0: spec = StateSpec::coherent(std::polar(1.5 * std::sqrt(u(rng)), 2.0 * kPi * u(rng))); break;
      case 1: spec = StateSpec::squeezed(std::polar(0.6 * u(rng), 2.0 * kPi * u(rng))); break;
      case 2: spec = StateSpec::fock(static_cast<int>(u(rng) * 5.0)); break;
      default: spec = StateSpec::cat(std::polar(2.0 * u(rng) + 0.1, 2.0 * kPi * u(rng))); break;
    }
    const cplx alpha = std::polar(c.max_alpha * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
    const double phi = 2.0 * kPi * u(rng) - kPi;
    automatic = std::max(automatic, required_dim(spec, std::abs(alpha), cfg.policy));
    cases.push_back({spec, alpha, phi});
  }
  const int dim = pick_dim(cfg, opt, automatic);

  struct Row {
    double p_kraus, p_circuit, fid_plus, fid_minus, p_up, p_down_inner;
  };
  std::vector<Row> rows(cases.size());
  parallel_for(static_cast<int>(cases.size()), threads, [&](int i) {
    const auto& cs = cases[static_cast<std::size_t>(i)];
    const PureState psi = std::get<PureState>(make_state(cs.spec, dim, cfg.policy));
    const auto setting = ModularSetting::asymmetric(cs.alpha, cs.phi);
    const auto kraus = measure_once(State(psi), setting);
    const auto circuit = branches(asymmetric_sequence(psi, cs.alpha, cs.phi));
    auto fid = [](const std::optional<State>& a, const std::optional<PureState>& b) {
      if (!a || !b) return a.has_value() == b.has_value() ? 1.0 : 0.0;
      return fidelity(std::get<PureState>(*a), *b);
    };
    const auto inner = inner_block(ThreeLevelState::product(Level::Down, psi), cs.alpha);
    rows[static_cast<std::size_t>(i)] = {kraus.p_plus,
                                         circuit.p_plus,
                                         fid(kraus.post_plus, circuit.post_plus),
                                         fid(kraus.post_minus, circuit.post_minus),
                                         circuit.p_up,
                                         inner.population(Level::Down)};
  });

  Csv csv({"case", "state", "alpha_re", "alpha_im", "phi", "P_plus_kraus", "P_plus_circuit", "fidelity_plus",
           "fidelity_minus", "P_up", "P_down_inner"});
  double max_dp = 0.0, min_fid = 1.0, max_inner = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& r = rows[i];
    csv.cell(static_cast<int>(i)).text(cases[i].spec.describe()).cell(cases[i].alpha.real()).cell(cases[i].alpha.imag());
    csv.cell(cases[i].phi).cell(r.p_kraus).cell(r.p_circuit).cell(r.fid_plus).cell(r.fid_minus).cell(r.p_up);
    csv.cell(r.p_down_inner);
    max_dp = std::max(max_dp, std::abs(r.p_kraus - r.p_circuit));
    min_fid = std::min({min_fid, r.fid_plus, r.fid_minus});
    max_inner = std::max(max_inner, std::abs(r.p_down_inner - 1.0));
  }
  json diag = {{"max_abs_p_difference", max_dp}, {"min_fidelity", min_fid}, {"max_inner_down_deviation", max_inner}};
  return {csv.str(), {{"dim", dim}, {"rows", csv.rows()}, {"diagnostics", diag}}};
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  const int workers = std::min(resolve_threads(threads), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

RunResult execute(const ExperimentConfig& config, const RunOptions& options) {
  if (options.dim_override && (*options.dim_override < 2 || *options.dim_override > 4000)) {
    throw ConfigError("--dim-override", "must lie in [2, 4000]");
  }
  const int threads = resolve_threads(options.threads);
  const auto t0 = std::chrono::steady_clock::now();
  RunResult result = std::visit(
      [&](const auto& body) -> RunResult {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, SitScanConfig>) return run_sit_scan(config, body, options, threads);
        else if constexpr (std::is_same_v<T, NsitSuiteConfig>) return run_nsit_suite(config, body, options, threads);
        else if constexpr (std::is_same_v<T, CorrelatorMapConfig>) return run_correlator_map(config, body, options, threads);
        else if constexpr (std::is_same_v<T, LgiSweepConfig>) return run_lgi_sweep(config, body, options, threads);
        else if constexpr (std::is_same_v<T, LgiOptimizeConfig>) return run_lgi_optimize(config, body, options);
        else if constexpr (std::is_same_v<T, WignerConfig>) return run_wigner(config, body, options, threads);
        else if constexpr (std::is_same_v<T, ClassicalRamseyConfig>) return run_classical(config, body, options);
        else return run_three_level(config, body, options, threads);
      },
      config.body);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json& s = result.sidecar;
  s["name"] = config.name;
  s["kind"] = config.kind;
  s["config_hash"] = "fnv1a64:" + hex64(fnv1a(config.source));
  s["seed"] = options.seed.value_or(config.seed);
  s["threads"] = threads;
  s["dim_override"] = options.dim_override ? json(*options.dim_override) : json(nullptr);
  s["wall_time_s"] = wall;
  s["truncation"] = {{"ceiling", config.policy.ceiling},
                     {"margin", config.policy.margin},
                     {"leakage_threshold", config.policy.leakage_threshold}};
  return result;
}

WrittenFiles write_outputs(const RunResult& result, const std::string& name, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  WrittenFiles files{out_dir / (name + ".csv"), out_dir / (name + ".json")};
  json sidecar = result.sidecar;
  sidecar["csv"] = files.csv.filename().string();
  {
    std::ofstream out(files.csv, std::ios::binary);
    out << result.csv;
    if (!out) throw std::runtime_error("cannot write " + files.csv.string());
  }
  std::ofstream out(files.sidecar, std::ios::binary);
  out << sidecar.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + files.sidecar.string());
  return files;
}

}  // namespace modvar::cli
