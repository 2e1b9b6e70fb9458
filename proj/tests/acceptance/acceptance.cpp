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

// Acceptance checks: one PASS/FAIL line per criterion. Tolerances are fixed
// here. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "modvar/branch_tree.hpp"
#include "modvar/classical.hpp"
#include "modvar/closed_form.hpp"
#include "modvar/lgi.hpp"
#include "modvar/noise.hpp"
#include "modvar/three_level.hpp"

namespace {

using namespace modvar;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------------ 1

StateSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  switch (std::uniform_int_distribution<int>(0, 6)(rng)) {
    case 0: return StateSpec::vacuum();
    case 1: return StateSpec::fock(std::uniform_int_distribution<int>(1, 4)(rng));
    case 2: return StateSpec::coherent({u(rng), u(rng)});
    case 3: return StateSpec::squeezed({0.7 * u(rng), 0.7 * u(rng)});
    case 4: return StateSpec::thermal(0.5 * (1.0 + u(rng)));
    case 5: return StateSpec::cat({2.0 * u(rng), 2.0 * u(rng)});
    default: return StateSpec::cat({2.0 * u(rng), 2.0 * u(rng)}, StateSpec::squeezed({0.5 * u(rng), 0.0}));
  }
}

Verdict oracle_equivalence() {
  constexpr double kTol = 1e-8;
  constexpr int kExperiments = 500;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260501);
  std::uniform_real_distribution<double> u(-1.8, 1.8), ph(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < kExperiments; ++i) {
    const StateSpec spec = random_spec(rng);
    const Variant v = i % 2 ? Variant::Asymmetric : Variant::Symmetric;
    const ModularSetting a{{u(rng), u(rng)}, ph(rng), v}, b{{u(rng), u(rng)}, ph(rng), v};
    const State s = make_state(spec, required_dim(spec, a.reach() + b.reach()));
    const auto m = measure_sit(s, a, b);
    const auto mb = OverlapValue::from(overlap_matrix(s, b.alpha));
    const auto mm = OverlapValue::from(overlap_matrix(s, a.alpha - b.alpha));
    const auto mp = OverlapValue::from(overlap_matrix(s, a.alpha + b.alpha));
    const double sit = v == Variant::Symmetric ? sit_symmetric(a.alpha, b.alpha, mb, b.phase)
                                               : sit_asymmetric(a.alpha, b.alpha, b.phase, mb);
    const double corr = v == Variant::Symmetric ? corr_symmetric(mm, mp, a.phase, b.phase)
                                                : corr_asymmetric(a.alpha, b.alpha, a.phase, b.phase, mm, mp);
    worst = std::max({worst, std::abs(sit - m.sit), std::abs(corr - m.correlator)});
  }
  const double t = seconds_since(t0);
  return {worst < kTol && t < 120.0, "500 experiments, max |closed - tree| = " + fmt("%.2e", worst) +
                                         " (tol 1e-8), " + fmt("%.1f", t) + " s (limit 120 s)"};
}

// ------------------------------------------------------------------ 2

std::vector<double> nsit_suite(double alpha_a) {
  const cplx alpha_b(0.0, kPi);
  const std::vector<StateSpec> bases{StateSpec::vacuum(), StateSpec::squeezed({-0.82, 0.0}), StateSpec::fock(1)};
  const auto a = ModularSetting::symmetric(alpha_a);
  const auto b = ModularSetting::symmetric(alpha_b);
  std::vector<double> out;
  for (const auto& base : bases) {
    for (int k = 0; k < 50; ++k) {
      const auto spec = StateSpec::cat(std::polar(std::abs(alpha_b), 2.0 * kPi * k / 50.0), base);
      out.push_back(measure_sit(make_state(spec, required_dim(spec, a.reach() + b.reach())), a, b).sit);
    }
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Verdict nsit_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto exact = nsit_suite(4.0);
  const auto compare = nsit_suite(3.0);
  const double t = seconds_since(t0);
  const double m0 = max_abs(exact), m3 = max_abs(compare);
  const bool pass = exact.size() == 150 && m0 < 1e-9 && std::abs(m3 - 0.5) <= 0.01 && t < 300.0;
  return {pass, "150 states: max |S| at alpha_A=4 is " + fmt("%.2e", m0) + " (tol 1e-9); at alpha_A=3 is " +
                    fmt("%.4f", m3) + " (0.5 +- 0.01), " + fmt("%.1f", t) + " s"};
}

// ------------------------------------------------------------------ 3

Verdict squeezing_curve() {
  const auto a = ModularSetting::symmetric(3.02);
  const auto b = ModularSetting::symmetric({0.0, 3.1});
  const double phi = 3.02 * 3.1;
  const auto curve = [&](double r) { return 0.5 * (1.0 - std::cos(phi)) * std::exp(-(3.1 * 3.1 / 2.0) * std::exp(-2.0 * r)); };
  double worst = 0.0, s0 = 0.0;
  for (int i = 0; i <= 150; ++i) {
    const double r = 0.01 * i;
    const auto spec = StateSpec::squeezed(r);
    const double s = measure_sit(make_state(spec, required_dim(spec, a.reach() + b.reach())), a, b).sit;
    if (i == 0) s0 = s;
    worst = std::max(worst, std::abs(s - curve(r)));
  }
  const double limit = 0.5 * (1.0 - std::cos(phi));
  const bool pass = worst < 1e-8 && std::abs(s0 - 8.2e-3) < 0.05e-3 && std::abs(limit - 0.999) < 5e-4;
  return {pass, "151 r points, max deviation " + fmt("%.2e", worst) + " (tol 1e-8); S(0) = " + fmt("%.5f", s0) +
                    ", S(inf) = " + fmt("%.5f", limit)};
}

// ------------------------------------------------------------------ 4

Verdict cat_scan() {
  const auto spec = StateSpec::cat({0.0, kPi});
  const auto b = ModularSetting::symmetric({0.0, kPi});
  const State s = make_state(spec, required_dim(spec, 6.5 / 2.0 + b.reach()));
  const double m_b = std::abs(overlap_matrix(s, b.alpha));
  double zero_worst = 0.0, peak = 0.0;
  for (int i = 0; i <= 260; ++i) {
    const double alpha_a = 0.025 * i;
    const double sit = measure_sit(s, ModularSetting::symmetric(alpha_a), b).sit;
    if (i % 80 == 0) zero_worst = std::max(zero_worst, std::abs(sit));  // 0, 2, 4, 6
    peak = std::max(peak, std::abs(sit));
  }
  const bool pass = zero_worst < 1e-8 && std::abs(peak - m_b) < 1e-6;
  return {pass, "max |S| at alpha_A in {0,2,4,6} = " + fmt("%.2e", zero_worst) + " (tol 1e-8); amplitude " +
                    fmt("%.8f", peak) + " vs |m_B| " + fmt("%.8f", m_b) + " (tol 1e-6)"};
}

// ------------------------------------------------------------------ 5

Verdict correlator_map() {
  const State vac = make_state(StateSpec::vacuum(), 80);
  const auto a = ModularSetting::asymmetric(2.1, 0.0);
  double worst = 0.0;
  int sign_flips = 0, sign_checks = 0;
  std::vector<std::vector<double>> grid(61, std::vector<double>(61));
  for (int i = 0; i < 61; ++i) {
    for (int j = 0; j < 61; ++j) {
      const cplx ab(-3.0 + 0.1 * i, -3.0 + 0.1 * j);
      const auto b = ModularSetting::asymmetric(ab, kPi / 2.0);
      const ModularSetting seq[] = {a, b};
      const double c = measure_sequence(vac, seq).correlator();
      const double printed = -(std::exp(-std::norm(2.1 - ab) / 2.0) + std::exp(-std::norm(2.1 + ab) / 2.0)) *
                             std::sin(geometric_phase(2.1, ab)) / 2.0;
      worst = std::max(worst, std::abs(c - printed));
      grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
    }
  }
  for (int i = 0; i < 61; ++i) {
    for (int j = 31; j < 61; ++j) {
      const double up = grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const double down = grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(60 - j)];
      if (std::abs(up) < 1e-6) continue;
      ++sign_checks;
      if (up * down < 0 && std::abs(up + down) < 1e-10) ++sign_flips;
    }
  }
  const bool pass = worst < 1e-8 && sign_checks > 0 && sign_flips == sign_checks;
  return {pass, "61x61 grid, max deviation " + fmt("%.2e", worst) + " (tol 1e-8); sign flips across Im=0 at " +
                    std::to_string(sign_flips) + "/" + std::to_string(sign_checks) + " mirrored points"};
}

// ------------------------------------------------------------------ 6-8

struct LgiChains {
  std::vector<double> amps;
  std::vector<std::vector<OptimizeResult>> by_nbar;  // n̄ = 0, 0.23, 0.42
  double seconds = 0.0;
};

const LgiChains& lgi_chains() {
  static const LgiChains chains = [] {
    LgiChains c;
    const auto t0 = std::chrono::steady_clock::now();
    c.amps = amp_grid(0.5, 3.0, 0.05);
    for (double nbar : {0.0, 0.23, 0.42}) c.by_nbar.push_back(optimize_chain(c.amps, nbar, std::nullopt));
    c.seconds = seconds_since(t0);
    return c;
  }();
  return chains;
}

Verdict lgi_ideal() {
  const auto& c = lgi_chains();
  const auto& ground = c.by_nbar[0];
  double min_l = 10.0, min_high = 10.0;
  bool monotone = true;
  for (std::size_t i = 0; i < c.amps.size(); ++i) {
    min_l = std::min(min_l, ground[i].value.l);
    if (c.amps[i] >= 2.5 - 1e-9) min_high = std::min(min_high, ground[i].value.l);
    for (std::size_t k = 1; k < c.by_nbar.size(); ++k) {
      if (!(c.by_nbar[k][i].value.l < c.by_nbar[k - 1][i].value.l)) monotone = false;
    }
  }
  const bool pass = min_l > 1.0 && min_high >= 1.45 && monotone && c.seconds < 1800.0;
  return {pass, "min L on [0.5,3] = " + fmt("%.4f", min_l) + " (> 1); min L for amp >= 2.5 = " +
                    fmt("%.4f", min_high) + " (needs >= 1.45); L decreasing in nbar: " +
                    (monotone ? "yes" : "no") + "; " + fmt("%.1f", c.seconds) + " s"};
}

Verdict lgi_penalized() {
  const auto& c = lgi_chains();
  double max_ts = 0.0, min_pen = 10.0;
  for (std::size_t i = 0; i < c.amps.size(); ++i) {
    if (c.amps[i] < 2.5 - 1e-9) continue;
    max_ts = std::max(max_ts, c.by_nbar[0][i].value.ts);
    min_pen = std::min(min_pen, c.by_nbar[0][i].value.l_penalized);
  }
  return {max_ts < 0.05 && min_pen > 1.3,
          "amp >= 2.5: max TS = " + fmt("%.2e", max_ts) + " (< 0.05), min L - TS = " + fmt("%.4f", min_pen) + " (> 1.3)"};
}

Verdict lgi_noise() {
  const auto& c = lgi_chains();
  std::vector<OptimizeResult> picks;
  for (std::size_t i = 0; i < c.amps.size(); i += 10) picks.push_back(c.by_nbar[0][i]);  // 0.5, 1.0, ..., 3.0
  const NoiseParams params;  // 30 s^-1, 665 Hz, 0.087 rad, 4000 samples
  const auto curve = noisy_lgi_curve(picks, params, 11);
  bool below = true;
  double at1 = 0.0, drop3 = 0.0;
  for (const auto& p : curve) {
    if (!(p.noisy.l < p.ideal.l)) below = false;
    if (std::abs(p.amp - 1.0) < 1e-9) at1 = p.noisy.l;
    if (std::abs(p.amp - 3.0) < 1e-9) drop3 = p.ideal.l - p.noisy.l;
  }
  return {below && at1 > 1.0 && drop3 > 0.05, std::string("L_noisy < L_ideal at all ") + std::to_string(curve.size()) +
                                                  " amps: " + (below ? "yes" : "no") + "; L_noisy(1) = " +
                                                  fmt("%.4f", at1) + " (> 1); drop at amp 3 = " + fmt("%.4f", drop3) +
                                                  " (> 0.05)"};
}

// ------------------------------------------------------------------ 9

Verdict three_level() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(-1.5, 1.5), ph(-kPi, kPi);
  double worst_p = 0.0, worst_f = 0.0, worst_down = 0.0;
  int cases = 0;
  while (cases < 100) {
    const StateSpec spec = random_spec(rng);
    if (spec.kind == StateSpec::Kind::Thermal) continue;  // pure inputs only
    ++cases;
    const cplx alpha(u(rng), u(rng));
    const double phi = ph(rng);
    const int dim = required_dim(spec, std::abs(alpha));
    const PureState psi = std::get<PureState>(make_state(spec, dim));
    const auto b = branches(asymmetric_sequence(psi, alpha, phi));
    const auto k = measure_once(State(psi), ModularSetting::asymmetric(alpha, phi));
    worst_p = std::max({worst_p, std::abs(b.p_plus - k.p_plus), std::abs(b.p_minus - k.p_minus), b.p_up});
    for (int o : {1, -1}) {
      const auto& circ = o > 0 ? b.post_plus : b.post_minus;
      const auto& kraus = k.post(o);
      if (circ.has_value() != kraus.has_value()) worst_f = 1.0;
      if (!circ || !kraus) continue;
      const double f = std::norm(circ->amplitudes().dot(std::get<PureState>(*kraus).amplitudes()));
      worst_f = std::max(worst_f, 1.0 - f);
    }
    const auto inner = inner_block(ThreeLevelState::product(Level::Down, psi), alpha);
    worst_down = std::max(worst_down, std::abs(inner.population(Level::Down) - 1.0));
  }
  const bool pass = worst_p < 1e-10 && worst_f < 1e-10 && worst_down < 1e-10;
  return {pass, "100 random cases: max |dP| = " + fmt("%.1e", worst_p) + ", max 1 - fidelity = " + fmt("%.1e", worst_f) +
                    ", max |P(down) - 1| after inner block = " + fmt("%.1e", worst_down) + " (tol 1e-10)"};
}

// ------------------------------------------------------------------ 10

Verdict gkp_limit() {
  const double s = std::sqrt(kPi);
  const DimPolicy policy{800};
  std::string sym_list, asym_list;
  std::vector<double> values;
  for (double delta : {0.7, 0.55, 0.45, 0.35, 0.3}) {
    const auto spec = StateSpec::gkp(s, delta);
    const cplx aa(0.0, kPi / s), ab(s, 0.0);
    const State st = make_state(spec, required_dim(spec, std::abs(aa) / 2.0 + std::abs(ab) / 2.0, policy), policy);
    const double sym = measure_sit(st, ModularSetting::symmetric(aa), ModularSetting::symmetric(ab)).sit;
    const double asym = measure_sit(st, ModularSetting::asymmetric(aa), ModularSetting::asymmetric(ab)).sit;
    values.push_back(sym);
    sym_list += (sym_list.empty() ? "" : ", ") + fmt("%.4f", sym);
    asym_list += (asym_list.empty() ? "" : ", ") + fmt("%.0e", std::abs(asym));
  }
  bool increasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) increasing = increasing && values[i] > values[i - 1];
  const bool pass = increasing && values.back() > 0.9 && values.back() <= 1.0;
  return {pass, "Delta = 0.7..0.3: symmetric S = [" + sym_list + "] (increasing, last > 0.9); |S~| = [" + asym_list +
                    "] (Phi = -pi)"};
}

// ------------------------------------------------------------------ 11

Verdict classical_separation() {
  double classical = 0.0;
  for (double a0 : {8000.0, 5000.0, 2000.0}) {
    ClassicalFieldParams first{a0, 1000.0, 50.0, 0.004, 0.3, 0.0};
    ClassicalFieldParams second{a0, 1000.0, 50.0, 0.006, -1.1, 0.004};
    classical = std::max(classical, std::abs(classical_sequential_sit(first, second, ClassicalMode::Analytic)));
  }
  const auto spec = StateSpec::cat({0.0, kPi});
  const auto b = ModularSetting::symmetric({0.0, kPi});
  const auto a = ModularSetting::symmetric(1.0);  // Φ = π
  const double quantum = measure_sit(make_state(spec, required_dim(spec, a.reach() + b.reach())), a, b).sit;

  // Single-time traces: analytic average against seeded sampling.
  double worst_z = 0.0, start_dev = 0.0;
  for (double a0 : {8000.0, 5000.0, 2000.0}) {
    const ClassicalFieldParams base{a0, 1000.0, 50.0, 0.0, 0.0, 0.0};
    const auto trace = classical_trace(base, 0.04, 801);
    start_dev = std::max(start_dev, std::abs(trace.front().q + 1.0));
    for (std::size_t i = 0; i < trace.size(); i += 40) {
      ClassicalFieldParams p = base;
      p.wait = trace[i].wait;
      const double mc = classical_q_expect_mc(p, 100000, 17 + i);
      worst_z = std::max(worst_z, std::abs(mc - trace[i].q) * std::sqrt(100000.0));
    }
  }
  const bool pass = classical < 1e-12 && std::abs(std::abs(quantum) - 0.5) < 0.02 && worst_z < 5.0 && start_dev < 1e-12;
  return {pass, "classical |S| = " + fmt("%.1e", classical) + " (tol 1e-12); quantum |S| = " +
                    fmt("%.4f", std::abs(quantum)) + " (0.5 +- 0.02); trace vs sampling max z = " + fmt("%.2f", worst_z) +
                    " (< 5)"};
}

// ------------------------------------------------------------------ 12

Verdict sit_to_lgi() {
  std::mt19937_64 rng(1212);
  std::uniform_real_distribution<double> u(-1.5, 1.5), ph(-kPi, kPi);
  double worst = 0.0;
  int used = 0;
  while (used < 50) {
    const StateSpec spec = random_spec(rng);
    const Variant v = used % 2 ? Variant::Asymmetric : Variant::Symmetric;
    const ModularSetting b{{u(rng), u(rng)}, ph(rng), v}, c{{u(rng), u(rng)}, ph(rng), v};
    const State st = make_state(spec, required_dim(spec, b.reach() + c.reach()));
    const auto r = sit_to_lgi_end_to_end(st, b, c);
    if (std::abs(r.a) < 1e-6) continue;
    worst = std::max(worst, std::abs(r.l - (1.0 + 2.0 * std::abs(r.a))));
    ++used;
  }
  return {worst < 1e-10, "50 experiments with S != 0: max |L - (1 + 2a)| = " + fmt("%.1e", worst) + " (tol 1e-10)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"NSIT exactness", nsit_exactness},
      {"squeezing curve", squeezing_curve},
      {"cat scan zeros and amplitude", cat_scan},
      {"correlator map", correlator_map},
      {"LGI ideal", lgi_ideal},
      {"penalized LGI", lgi_penalized},
      {"noisy LGI", lgi_noise},
      {"three-level oracle", three_level},
      {"GKP limit", gkp_limit},
      {"classical separation", classical_separation},
      {"SIT to LGI protocol", sit_to_lgi},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s criterion %2d  %-30s %s\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
