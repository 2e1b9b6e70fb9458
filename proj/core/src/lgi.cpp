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

#include "modvar/lgi.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "modvar/closed_form.hpp"
#include "modvar/errors.hpp"
#include "modvar/simplex.hpp"

namespace modvar {

namespace {

constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {1, 2}, {0, 2}}};

double wrap(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x <= -kPi ? x + 2.0 * kPi : x;
}

cplx squeeze_of(const LgiSettings& s) { return s.input_squeeze.value_or(cplx{}); }

LgiSettings from_vector(const std::vector<double>& x, double amp, double nbar, std::optional<cplx> xi) {
  LgiSettings s;
  s.amp = amp;
  s.nbar = nbar;
  s.input_squeeze = xi;
  for (std::size_t i = 0; i < 3; ++i) {
    s.theta[i] = x[i];
    s.phi[i] = x[i + 3];
  }
  return s;
}

std::vector<double> to_vector(const LgiSettings& s) {
  return {s.theta[0], s.theta[1], s.theta[2], s.phi[0], s.phi[1], s.phi[2]};
}

double theta_cost(const std::array<double, 3>& t) {
  return std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]);
}

void canonicalize(LgiSettings& s) {
  for (auto& t : s.theta) t = wrap(t);
  for (auto& p : s.phi) p = wrap(p);
  if (!s.rotation_invariant_input()) return;
  // Σ|θ − c| on the circle is minimized with c at one of the θ's.
  std::array<double, 3> best = s.theta;
  for (double c : s.theta) {
    std::array<double, 3> shifted{wrap(s.theta[0] - c), wrap(s.theta[1] - c), wrap(s.theta[2] - c)};
    if (theta_cost(shifted) < theta_cost(best) - 1e-12) best = shifted;
  }
  s.theta = best;
}

OptimizeResult polish(const LgiSettings& start, const OptimizeOptions& options) {
  const double amp = start.amp;
  const double nbar = start.nbar;
  const auto xi = start.input_squeeze;
  auto objective = [&](const std::vector<double>& x) {
    return -lgi_value(from_vector(x, amp, nbar, xi), LgiEngine::Analytic).l;
  };
  SimplexOptions so;
  so.max_iterations = options.max_iterations;
  const SimplexResult r = minimize_simplex(objective, to_vector(start), so);
  OptimizeResult out;
  out.settings = from_vector(r.x, amp, nbar, xi);
  canonicalize(out.settings);
  out.value = lgi_value(out.settings, LgiEngine::Analytic);
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

OptimizeResult from_scratch(double amp, double nbar, std::optional<cplx> xi, const OptimizeOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::optional<OptimizeResult> best;
  for (int k = 0; k < std::max(1, options.random_starts); ++k) {
    std::vector<double> x(6);
    for (auto& v : x) v = angle(rng);
    OptimizeResult r = polish(from_vector(x, amp, nbar, xi), options);
    if (!best || r.value.l > best->value.l + 1e-9 ||
        (std::abs(r.value.l - best->value.l) <= 1e-9 &&
         theta_cost(r.settings.theta) < theta_cost(best->settings.theta) - 1e-9)) {
      best = r;
    }
  }
  return *best;
}

}  // namespace

LgiResult assemble_lgi(double c_ab, double c_bc, double c_ac, const std::array<double, 3>& sit) {
  LgiResult r;
  r.c_ab = c_ab;
  r.c_bc = c_bc;
  r.c_ac = c_ac;
  r.l = c_ab + c_bc - c_ac;
  r.sit = sit;
  r.ts = 2.0 * (std::abs(sit[0]) + std::abs(sit[1]) + std::abs(sit[2]));
  r.l_penalized = r.l - r.ts;
  return r;
}

int lgi_dim(const LgiSettings& s, const DimPolicy& policy) {
  int base = extent(StateSpec::thermal(s.nbar)).base_excitation;
  if (!s.rotation_invariant_input()) base += extent(StateSpec::squeezed(squeeze_of(s))).base_excitation;
  return auto_dim(2.0 * s.amp, base, policy.margin, policy.ceiling);
}

State lgi_input_state(const LgiSettings& s, const DimPolicy& policy) {
  const int dim = lgi_dim(s, policy);
  if (s.nbar == 0.0) {
    return s.rotation_invariant_input() ? make_state(StateSpec::vacuum(), dim, policy)
                                        : make_state(StateSpec::squeezed(squeeze_of(s)), dim, policy);
  }
  State thermal = make_state(StateSpec::thermal(s.nbar), dim, policy);
  if (s.rotation_invariant_input()) return thermal;
  const Matrix sq = squeeze_matrix(squeeze_of(s), dim).matrix();
  MixedState out(sq * density(thermal) * sq.adjoint());
  if (out.leakage() > policy.leakage_threshold) {
    throw TruncationError("squeezed thermal input leaks past the truncation threshold");
  }
  return out;
}

LgiResult lgi_value(const LgiSettings& s, LgiEngine engine, const DimPolicy& policy) {
  if (s.amp < 0) throw DomainError("amp must be non-negative");
  std::array<double, 3> c{};
  std::array<double, 3> sit{};
  if (engine == LgiEngine::Analytic) {
    const cplx xi = squeeze_of(s);
    auto m = [&](cplx beta) { return OverlapValue::from(gaussian_overlap(beta, s.nbar, xi)); };
    for (std::size_t k = 0; k < 3; ++k) {
      const cplx ax = s.alpha(kPairs[k][0]);
      const cplx ay = s.alpha(kPairs[k][1]);
      const double px = s.phi[static_cast<std::size_t>(kPairs[k][0])];
      const double py = s.phi[static_cast<std::size_t>(kPairs[k][1])];
      c[k] = corr_asymmetric(ax, ay, px, py, m(ax - ay), m(ax + ay));
      sit[k] = sit_asymmetric(ax, ay, py, m(ay));
    }
  } else {
    const State input = lgi_input_state(s, policy);
    for (std::size_t k = 0; k < 3; ++k) {
      const SitMeasurement r = measure_sit(input, s.setting(kPairs[k][0]), s.setting(kPairs[k][1]));
      c[k] = r.correlator;
      sit[k] = r.sit;
    }
  }
  return assemble_lgi(c[0], c[1], c[2], sit);
}

OptimizeResult optimize_settings(double amp, double nbar, std::optional<cplx> input_squeeze,
                                 const std::optional<LgiSettings>& previous, const OptimizeOptions& options) {
  if (amp < 0) throw DomainError("amp must be non-negative");
  if (nbar < 0) throw DomainError("nbar must be non-negative");
  OptimizeResult r;
  if (previous) {
    LgiSettings start = *previous;
    start.amp = amp;
    start.nbar = nbar;
    start.input_squeeze = input_squeeze;
    r = polish(start, options);
  } else {
    r = from_scratch(amp, nbar, input_squeeze, options);
  }
  if (!r.converged) {
    throw ConvergenceError("settings optimizer did not converge within " + std::to_string(options.max_iterations) +
                           " iterations at amp " + std::to_string(amp));
  }
  return r;
}

std::vector<OptimizeResult> optimize_chain(std::span<const double> amps, double nbar,
                                           std::optional<cplx> input_squeeze, const OptimizeOptions& options,
                                           double jump_threshold) {
  std::vector<OptimizeResult> out;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i > 0 && amps[i] < amps[i - 1]) throw DomainError("amp grid must be ascending");
    if (i == 0) {
      out.push_back(optimize_settings(amps[i], nbar, input_squeeze, std::nullopt, options));
      continue;
    }
    OptimizeResult r = optimize_settings(amps[i], nbar, input_squeeze, out.back().settings, options);
    if (options.verify_every_point || std::abs(r.value.l - out.back().value.l) > jump_threshold) {
      OptimizeResult check = optimize_settings(amps[i], nbar, input_squeeze, std::nullopt, options);
      if (check.value.l > r.value.l) r = check;
      r.restarted = true;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<double> amp_grid(double start, double stop, double step) {
  if (step <= 0) throw DomainError("amp step must be positive");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double a = start + i * step;
    if (a > stop + 1e-9) break;
    out.push_back(a);
  }
  return out;
}

void write_settings_csv(std::ostream& out, std::span<const OptimizeResult> rows) {
  out << "amp,theta_A,theta_B,theta_C,phi_A,phi_B,phi_C,L,TS,L_pen\n";
  const auto precision = out.precision(12);
  for (const auto& r : rows) {
    const auto& s = r.settings;
    out << s.amp << ',' << s.theta[0] << ',' << s.theta[1] << ',' << s.theta[2] << ',' << s.phi[0] << ','
        << s.phi[1] << ',' << s.phi[2] << ',' << r.value.l << ',' << r.value.ts << ',' << r.value.l_penalized
        << '\n';
  }
  out.precision(precision);
}

ProtocolResult sit_to_lgi_protocol(double a) {
  if (!(a >= -1.0 && a <= 1.0)) throw DomainError("protocol difference a must lie in [-1, 1]");
  ProtocolResult r;
  r.a = a;
  if (a < 0) {
    r.assignment.f_c_up = 1;
    r.assignment.f_c_down = -1;
  }
  r.l = 1.0 + 2.0 * std::abs(a);
  return r;
}

ProtocolResult sit_to_lgi_end_to_end(const State& state, const ModularSetting& b, const ModularSetting& c) {
  const ModularSetting c_alone[] = {c};
  const ModularSetting b_then_c[] = {b, c};
  const BranchTree tc = measure_sequence(state, c_alone);
  const BranchTree tbc = measure_sequence(state, b_then_c);
  const double pc_down = tc.marginal_last(-1);
  const double pcb_down = tbc.marginal_last(-1);
  ProtocolResult r = sit_to_lgi_protocol(pcb_down - pc_down);
  const auto& f = r.assignment;
  auto fc = [&](int outcome) { return outcome > 0 ? f.f_c_up : f.f_c_down; };
  auto fb = [&](int outcome) { return outcome > 0 ? f.f_b_up : f.f_b_down; };
  // A confirms the preparation: always U.
  const double c_ab = static_cast<double>(f.f_a_up) * (fb(1) * tbc.joint(std::array{1}) + fb(-1) * tbc.joint(std::array{-1}));
  double c_bc = 0.0;
  for (int ob : {1, -1}) {
    for (int oc : {1, -1}) c_bc += fb(ob) * fc(oc) * tbc.joint(std::array{ob, oc});
  }
  double c_ac = 0.0;
  for (int oc : {1, -1}) c_ac += f.f_a_up * fc(oc) * tc.joint(std::array{oc});
  r.l = c_ab + c_bc - c_ac;
  return r;
}

SqueezedComparison squeezed_lgi_comparison(std::span<const double> amps, double r, const OptimizeOptions& options) {
  if (r < 0) throw DomainError("squeezing parameter must be non-negative");
  SqueezedComparison out;
  out.wave_packet_ratio = std::exp(r);
  // Squeezed inputs are not rotation invariant and the continuation can stay
  // on a poor branch without any jump, so every point is re-checked.
  OptimizeOptions verified = options;
  verified.verify_every_point = true;
  const auto ground = optimize_chain(amps, 0.0, std::nullopt, verified);
  const auto squeezed = optimize_chain(amps, 0.0, cplx{r, 0.0}, verified);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    out.rows.push_back({amps[i], ground[i].value.l, squeezed[i].value.l, ground[i].value.ts, squeezed[i].value.ts});
  }
  return out;
}

}  // namespace modvar
