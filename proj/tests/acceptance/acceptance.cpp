// Copyright 2026 The qtel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// One PASS/FAIL line per acceptance criterion. Exits non-zero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "qtel/dynamics.hpp"
#include "qtel/format.hpp"
#include "qtel/scattering.hpp"
#include "qtel/spectral.hpp"
#include "qtel/spectrum.hpp"
#include "qtel/symmetry.hpp"
#include "qtel/telegraph.hpp"

namespace fs = std::filesystem;
using namespace qtel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Detail {
 public:
  template <class T>
  Detail &kv(const std::string &k, const T &v) {
    if (!s_.empty() && s_.back() != ' ') s_ += ", ";
    s_ += k + '=';
    if constexpr (std::is_floating_point_v<T>) s_ += format_double(v);
    else if constexpr (std::is_same_v<T, bool>) s_ += v ? "yes" : "no";
    else if constexpr (std::is_arithmetic_v<T>) s_ += std::to_string(v);
    else s_ += v;
    return *this;
  }
  Detail &sep(const std::string &label) {
    if (!s_.empty()) s_ += "; ";
    s_ += label + ": ";
    return *this;
  }
  std::string str() const { return s_; }

 private:
  std::string s_;
};

SymmetryBlocks blocks_of(const ModelParams &p, HamiltonianMatrix *h_out = nullptr,
                         double *leak = nullptr) {
  const BasisMap b(p.N);
  const auto t = build_transform(b);
  const auto h = build_hamiltonian(p, b);
  const auto th = transform_hamiltonian(h, t);
  if (leak) *leak = max_off_block(th, t) / h.max_abs();
  if (h_out) *h_out = h;
  return extract_blocks(th, t);
}

Outcome block_decoupling() {
  Outcome o{true, {}};
  Detail d;
  for (int ex : {1, 2, 3}) {
    const auto t0 = Clock::now();
    double leak = 0;
    blocks_of(reference_example(ex), nullptr, &leak);
    const double dt = seconds_since(t0);
    o.pass = o.pass && leak <= 1e-12 && dt < 1.0;
    d.kv("ex" + std::to_string(ex) + "_rel_leak", leak).kv("s", dt);
  }
  o.detail = d.str();
  return o;
}

Outcome unitarity() {
  const auto p = reference_example(2);
  const auto ts = run_time_series(p, 8000, 4000, true);
  double norm_err = 0, trace_err = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    norm_err = std::max(norm_err, std::abs(1 - ts.norm[i]));
    trace_err = std::max(trace_err, std::abs(ts.occ_alpha[i] + ts.occ_beta[i] - 1));
  }
  return {norm_err <= 1e-10 && trace_err <= 1e-9 && ts.size() == 4000,
          Detail().kv("samples", ts.size()).kv("max_norm_err", norm_err).kv("max_trace_err", trace_err).str()};
}

struct Run {
  TimeSeries ts;
  SwitchEvents sw;
  double seconds = 0;
};

Run simulate(int ex) {
  const auto t0 = Clock::now();
  RunConfig cfg;
  cfg.params = reference_example(ex);
  const auto a = cli::analyze_point(cfg, {});
  return {a.series, a.switches, seconds_since(t0)};
}

Outcome regimes(const Run &r1, const Run &r2, const Run &r3) {
  Detail d;
  bool all = true;

  const auto p1 = reference_example(1);
  const auto reg1 = classify_regime(p1.V, p1.dV);
  const double period = dominant_period(r1.ts.times, r1.ts.occ_alpha);
  const double rabi = four_level_rabi_period(p1);
  const auto jumps = detect_jumps(r1.ts.times, r1.ts.occ_alpha);
  const bool ok1 = reg1 == Regime::SlowRabi && period > 10 * rabi && jumps.size() >= 2 && r1.seconds < 30;
  d.sep("ex1").kv("regime", std::string(to_string(reg1))).kv("dominant_period_s", period)
      .kv("w0_rabi_period_s", rabi).kv("jumps", jumps.size()).kv("s", r1.seconds).kv("ok", ok1);
  all = all && ok1;

  const auto p2 = reference_example(2);
  const auto reg2 = classify_regime(p2.V, p2.dV);
  std::size_t plateau = 0;
  for (double x : r2.ts.occ_alpha) plateau += (x > 0.8 || x < 0.2);
  const double frac2 = static_cast<double>(plateau) / r2.ts.size();
  const bool ok2 = reg2 == Regime::Telegraph && r2.sw.events.size() >= 2 && frac2 >= 0.6 && r2.seconds < 30;
  d.sep("ex2").kv("regime", std::string(to_string(reg2))).kv("switches", r2.sw.events.size())
      .kv("plateau_fraction", frac2).kv("s", r2.seconds).kv("ok", ok2);
  all = all && ok2;

  const auto p3 = reference_example(3);
  const auto reg3 = classify_regime(p3.V, p3.dV);
  std::size_t mid = 0;
  for (double x : r3.ts.occ_alpha) mid += (x >= 0.25 && x <= 0.75);
  const double frac3 = static_cast<double>(mid) / r3.ts.size();
  const bool ok3 = reg3 == Regime::Bonding && frac3 >= 0.9 && r3.sw.events.empty() && r3.seconds < 30;
  d.sep("ex3").kv("regime", std::string(to_string(reg3))).kv("mid_fraction", frac3)
      .kv("switches", r3.sw.events.size()).kv("s", r3.seconds).kv("ok", ok3);
  all = all && ok3;
  return {all, d.str()};
}

Outcome telegraph_time_scale(const Run &r2) {
  const auto p = reference_example(2);
  const double tau = continuum_recurrence_time(p);
  const double half_rabi = 0.5 * four_level_rabi_period(p);
  // Diagnostic only: spacing of the in-band plateau jumps.
  const auto jumps = detect_jumps(r2.ts.times, r2.ts.occ_alpha);
  double spacing = std::numeric_limits<double>::quiet_NaN();
  if (jumps.size() >= 3)
    spacing = (jumps.back().time - jumps[1].time) / static_cast<double>(jumps.size() - 2);
  Detail d;
  d.kv("switches", r2.sw.events.size()).kv("tau_s", tau)
      .kv("window_s", format_double(0.3 * tau) + ".." + format_double(3 * tau));
  if (r2.sw.dwells.empty()) {
    d.kv("dwells", 0).kv("jump_spacing_s", spacing);
    return {false, d.str()};
  }
  const auto s = dwell_statistics(r2.sw);
  d.kv("mean_dwell_s", s.mean).kv("dwells", s.count).kv("slowdown_vs_half_rabi", s.mean / half_rabi)
      .kv("jump_spacing_s", spacing);
  return {s.mean >= 0.3 * tau && s.mean <= 3 * tau, d.str()};
}

Outcome degenerate_oracle() {
  auto p = reference_example(2);
  p.degenerate_continuum = true;
  const auto ev = diagonalize(blocks_of(p).minus).eigenvalues;
  const auto red = degenerate_reduction(p);
  std::vector<double> expected(p.N, red.E1);
  expected.push_back(red.E2);
  expected.push_back(red.E3);
  std::sort(expected.begin(), expected.end());
  double dev = 0;
  for (int i = 0; i < ev.size(); ++i) dev = std::max(dev, std::abs(ev(i) - expected[i]));
  const double lead = p.band_center + degenerate_e3_leading_order(p);
  const double rel = std::abs(lead / red.E3 - 1);
  return {dev <= 1e-10 && rel <= 0.005,
          Detail().kv("zero_multiplicity", p.N).kv("max_abs_dev_peV", dev).kv("E3", red.E3)
              .kv("E3_leading", lead).kv("rel_err", rel).str()};
}

Outcome perturbative_cross_validation() {
  const auto p = reference_example(2);
  const auto cmp = validate_against_exact(p, diagonalize(blocks_of(p).minus));
  return {std::abs(cmp.slope + 1) <= 0.15 && cmp.scale_ratio >= 1.0 / 3 && cmp.scale_ratio <= 3,
          Detail().kv("states", cmp.states).kv("slope", cmp.slope).kv("prefactor", cmp.prefactor)
              .kv("predicted", cmp.predicted_prefactor).kv("ratio", cmp.scale_ratio).str()};
}

Outcome spectral_sum_rule() {
  Detail d;
  bool ok = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int ex : {1, 2, 3}) {
    const auto p = reference_example(ex);
    const BasisMap b(p.N);
    const auto sd = spectral_distribution(cli::block_eigensystem(p), build_transform(b), b);
    const double sum_err = std::abs(sd.total_weight() - 1);
    const auto fit = fit_lorentzian(sd, Branch::Minus, band_fit_options(p));
    ok = ok && sum_err <= 1e-10 && fit.half_width < prev;
    if (ex == 2) ok = ok && std::abs(fit.center - p.E_g) <= 2 * p.d_eps;
    prev = fit.half_width;
    d.sep("ex" + std::to_string(ex)).kv("sum_err", sum_err)
        .kv("center_over_d_eps", (fit.center - p.E_g) / p.d_eps)
        .kv("hwhm_over_d_eps", fit.half_width / p.d_eps);
  }
  return {ok, d.str()};
}

Outcome order_of_magnitude() {
  const auto p = reference_example(2);
  const auto el = onshell_matrix_elements(p, p.d_eps);
  const double ratio = std::abs(el.g_elem) / p.d_eps;
  const bool ok_ov = std::abs(el.overlap_scale / 5e-2 - 1) <= 0.2;
  const bool ok_g = std::abs(ratio / 1e-2 - 1) <= 0.2;
  return {ok_ov && ok_g, Detail().kv("overlap_scale", el.overlap_scale).kv("overlap_ok", ok_ov)
                             .kv("g_elem_over_E", ratio).kv("g_elem_ok", ok_g).str()};
}

Outcome fourier_reference() {
  double worst = 0;
  for (double x = 1e-3; x < 2 * std::numbers::pi; x += 1e-3) {
    const double dist = std::min({x, std::abs(x - std::numbers::pi), 2 * std::numbers::pi - x});
    if (dist < 0.05) continue;
    const double target = x < std::numbers::pi ? std::numbers::pi / 4 : -std::numbers::pi / 4;
    worst = std::max(worst, std::abs(square_wave_partial_sum(x, 200) - target));
  }
  const double dt = 0.01;
  std::vector<double> t, y;
  for (double s = 0.3; s < 40; s += dt) {
    t.push_back(s);
    y.push_back(0.5 + square_wave_partial_sum(s, 200) * 2 / std::numbers::pi);
  }
  const auto ev = detect_switches(t, y);
  double dwell_err = 0;
  for (double dw : ev.dwells) dwell_err = std::max(dwell_err, std::abs(dw - std::numbers::pi));
  const bool ok = worst <= 0.02 && ev.dwells.size() >= 5 && dwell_err <= dt + 1e-12;
  return {ok, Detail().kv("max_dev", worst).kv("dwells", ev.dwells.size())
                  .kv("max_dwell_err_s", dwell_err).kv("sample_s", dt).str()};
}

Outcome determinism() {
  const auto root = fs::temp_directory_path() / "qtel_acceptance_determinism";
  fs::remove_all(root);
  std::ostringstream out, err;
  const int a = cli::run({"simulate", "--out", (root / "a").string()}, out, err);
  const int b = cli::run({"simulate", "--out", (root / "b").string()}, out, err);
  bool same = a == 0 && b == 0;
  for (const char *f : {"timeseries.csv", "events.csv", "summary.csv", "report.txt"})
    same = same && read_file(root / "a" / f) == read_file(root / "b" / f);
  fs::remove_all(root);
  return {same, Detail().kv("exit_codes", std::to_string(a) + "," + std::to_string(b)).str()};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char *name, const std::function<Outcome()> &fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "block decoupling", block_decoupling);
  report(2, "unitarity and trace", unitarity);
  const Run r1 = simulate(1), r2 = simulate(2), r3 = simulate(3);
  report(3, "regime reproduction", [&] { return regimes(r1, r2, r3); });
  report(4, "telegraph time scale", [&] { return telegraph_time_scale(r2); });
  report(5, "degenerate-continuum oracle", degenerate_oracle);
  report(6, "perturbative cross-validation", perturbative_cross_validation);
  report(7, "spectral sum rule and widths", spectral_sum_rule);
  report(8, "order-of-magnitude estimates", order_of_magnitude);
  report(9, "Fourier reference", fourier_reference);
  report(10, "determinism", determinism);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures ? 1 : 0;
}
