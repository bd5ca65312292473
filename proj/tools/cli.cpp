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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qtel/error.hpp"
#include "qtel/format.hpp"
#include "qtel/scattering.hpp"
#include "qtel/spectrum.hpp"
#include "qtel/symmetry.hpp"

namespace fs = std::filesystem;

namespace qtel::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string matrix_csv(const Eigen::MatrixXd &m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

SymmetryBlocks symmetry_blocks(const ModelParams &p, const SymmetryTransform &t) {
  const BasisMap b(p.N);
  return extract_blocks(transform_hamiltonian(build_hamiltonian(p, b), t), t);
}

double plateau_fraction(const TimeSeries &ts) {
  std::size_t n = 0;
  for (double x : ts.occ_alpha) n += (x > 0.8 || x < 0.2);
  return ts.size() ? static_cast<double>(n) / ts.size() : kNaN;
}

}  // namespace

EigenSystem block_eigensystem(const ModelParams &p) {
  const BasisMap b(p.N);
  const auto t = build_transform(b);
  const auto blocks = symmetry_blocks(p, t);
  return lift_blocks(diagonalize(blocks.plus), diagonalize(blocks.minus), t);
}

PointAnalysis analyze_point(const RunConfig &cfg, const AnalysisOptions &opt) {
  validate_config(cfg);
  const auto &p = cfg.params;
  PointAnalysis a;
  a.config = cfg;
  a.regime = classify_regime(p.V, p.dV);

  const BasisMap b(p.N);
  const auto t = build_transform(b);
  a.eigen = block_eigensystem(p);
  const auto c0 = project_initial(a.eigen, b, remote(Side::Alpha));
  a.series = sample_occupations(a.eigen, c0, b, time_grid(cfg.t_max, cfg.t_steps), p.hbar,
                                opt.include_environment);
  a.switches = detect_switches(a.series, opt.hi, opt.lo);
  if (!a.switches.dwells.empty()) a.dwell = dwell_statistics(a.switches);
  a.jumps = detect_jumps(a.series.times, a.series.occ_alpha, opt.jump_window, opt.jump_min_step);

  a.spectrum = spectral_distribution(a.eigen, t, b);
  try {
    a.minus_fit = fit_lorentzian(a.spectrum, Branch::Minus, band_fit_options(p));
  } catch (const ComputationError &e) {
    a.fit_error = e.what();
  }
  return a;
}

std::string summary_header() {
  return "V,dV,W,regime,switches,mean_dwell_s,jumps,minus_width_peV,status";
}

std::string summary_row(const PointAnalysis &a) {
  const auto &p = a.config.params;
  std::string status = "ok";
  if (!a.fit_error.empty()) status = "fit_failed: " + csv_safe(a.fit_error);
  else if (a.minus_fit && !a.minus_fit->converged) status = "fit_not_converged";
  return format_double(p.V) + ',' + format_double(p.dV) + ',' + format_double(p.W) + ',' +
         std::string(to_string(a.regime)) + ',' + std::to_string(a.switches.events.size()) +
         ',' + format_double(a.dwell ? a.dwell->mean : kNaN) + ',' +
         std::to_string(a.jumps.size()) + ',' +
         format_double(a.minus_fit ? a.minus_fit->half_width : kNaN) + ',' + status;
}

std::string timeseries_csv(const TimeSeries &ts) {
  std::string out = "t_seconds,occ_alpha,occ_beta\n";
  for (std::size_t i = 0; i < ts.size(); ++i)
    out += format_double(ts.times[i]) + ',' + format_double(ts.occ_alpha[i]) + ',' +
           format_double(ts.occ_beta[i]) + '\n';
  return out;
}

std::string events_csv(const SwitchEvents &ev) {
  std::string out = "t_seconds,direction,dwell_seconds\n";
  for (std::size_t i = 0; i < ev.events.size(); ++i) {
    out += format_double(ev.events[i].time) + ',' + std::string(to_string(ev.events[i].direction)) + ',';
    if (i > 0) out += format_double(ev.dwells[i - 1]);
    out += '\n';
  }
  return out;
}

std::string spectrum_csv(const SpectralDistribution &sd) {
  std::string out = "E_peV,weight,branch\n";
  for (const auto &e : sd.entries)
    out += format_double(e.energy) + ',' + format_double(e.weight) + ',' +
           std::string(to_string(e.branch)) + '\n';
  return out;
}

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  bool degenerate = false;
  AnalysisOptions analysis;
  int threads = 0;
};

RunConfig load(const CommonOptions &o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  cfg.params.degenerate_continuum = o.degenerate;
  validate_config(cfg);
  return cfg;
}

fs::path prepare_out(const CommonOptions &o) {
  fs::path dir(o.out_dir);
  fs::create_directories(dir);
  return dir;
}

void add_params(KeyValueReport &r, const ModelParams &p) {
  r.add("E_g", p.E_g);
  r.add("E_w", p.E_w);
  r.add("V", p.V);
  r.add("dV", p.dV);
  r.add("W", p.W);
  r.add("d_eps", p.d_eps);
  r.add("N", p.N);
  r.add("band_center", p.band_center);
  r.add("hbar", p.hbar);
  r.add("degenerate_continuum", p.degenerate_continuum);
  r.add("dimension", p.dimension());
}

void cmd_simulate(const CommonOptions &o, bool dump_blocks, bool dump_eigen, std::ostream &out) {
  const auto cfg = load(o);
  const auto &p = cfg.params;
  const auto a = analyze_point(cfg, o.analysis);
  const auto dir = prepare_out(o);

  write_file(dir / "timeseries.csv", timeseries_csv(a.series));
  write_file(dir / "events.csv", events_csv(a.switches));
  write_file(dir / "summary.csv", summary_header() + '\n' + summary_row(a) + '\n');

  double norm_err = 0, trace_err = 0;
  double occ_min = 1, occ_max = 0;
  for (std::size_t i = 0; i < a.series.size(); ++i) {
    norm_err = std::max(norm_err, std::abs(1 - a.series.norm[i]));
    trace_err = std::max(trace_err, std::abs(a.series.occ_alpha[i] + a.series.occ_beta[i] - 1));
    occ_min = std::min(occ_min, a.series.occ_alpha[i]);
    occ_max = std::max(occ_max, a.series.occ_alpha[i]);
  }

  KeyValueReport r;
  r.add("regime", to_string(a.regime));
  add_params(r, p);
  r.add("t_max_s", cfg.t_max);
  r.add("t_steps", cfg.t_steps);
  r.add("include_environment", o.analysis.include_environment);
  r.add("hysteresis_hi", o.analysis.hi);
  r.add("hysteresis_lo", o.analysis.lo);
  r.add("switches", a.switches.events.size());
  r.add("mean_dwell_s", a.dwell ? a.dwell->mean : kNaN);
  r.add("dwell_stddev_s", a.dwell ? a.dwell->stddev : kNaN);
  r.add("jumps", a.jumps.size());
  std::string jump_times;
  for (const auto &j : a.jumps) jump_times += (jump_times.empty() ? "" : " ") + format_double(j.time);
  r.add("jump_times_s", jump_times);
  r.add("recurrence_time_s", continuum_recurrence_time(p));
  r.add("rabi_period_w0_s", four_level_rabi_period(p));
  r.add("occ_alpha_min", occ_min);
  r.add("occ_alpha_max", occ_max);
  r.add("plateau_fraction", plateau_fraction(a.series));
  r.add("max_norm_error", norm_err);
  r.add("max_trace_error", o.analysis.include_environment ? trace_err : kNaN);
  r.add("minus_center_peV", a.minus_fit ? a.minus_fit->center : kNaN);
  r.add("minus_half_width_peV", a.minus_fit ? a.minus_fit->half_width : kNaN);
  r.add("fit_status", a.fit_error.empty() ? std::string("ok") : a.fit_error);
  write_file(dir / "report.txt", r.str());

  if (dump_blocks) {
    const BasisMap b(p.N);
    const auto t = build_transform(b);
    const auto blocks = symmetry_blocks(p, t);
    write_file(dir / "h_plus.csv", matrix_csv(blocks.plus));
    write_file(dir / "h_minus.csv", matrix_csv(blocks.minus));
  }
  if (dump_eigen) {
    std::string csv = "index,E_peV,g_alpha_weight\n";
    const BasisMap b(p.N);
    const int g = b.remote_index(Side::Alpha);
    for (int i = 0; i < a.eigen.dim(); ++i) {
      const double c = a.eigen.eigenvectors(g, i);
      csv += std::to_string(i) + ',' + format_double(a.eigen.eigenvalues(i)) + ',' +
             format_double(c * c) + '\n';
    }
    write_file(dir / "eigenstates.csv", csv);
  }

  out << "regime = " << to_string(a.regime) << "\n"
      << "switches = " << a.switches.events.size() << "\n"
      << "wrote " << (dir / "timeseries.csv").string() << ", events.csv, report.txt, summary.csv\n";
}

void cmd_spectrum(const CommonOptions &o, std::ostream &out) {
  const auto cfg = load(o);
  const auto &p = cfg.params;
  const BasisMap b(p.N);
  const auto t = build_transform(b);
  const auto es = block_eigensystem(p);
  const auto sd = spectral_distribution(es, t, b);
  const auto dir = prepare_out(o);
  write_file(dir / "spectrum.csv", spectrum_csv(sd));

  const auto regime = classify_regime(p.V, p.dV);
  const auto fopt = band_fit_options(p);
  double w_plus = 0, w_minus = 0, w_mixed = 0, w_plus_band = 0, w_minus_band = 0;
  for (const auto &e : sd.entries) {
    const bool band = e.energy >= fopt.window_lo && e.energy <= fopt.window_hi;
    if (e.branch == Branch::Plus) {
      w_plus += e.weight;
      if (band) w_plus_band += e.weight;
    } else if (e.branch == Branch::Minus) {
      w_minus += e.weight;
      if (band) w_minus_band += e.weight;
    } else {
      w_mixed += e.weight;
    }
  }

  KeyValueReport r;
  r.add("regime", to_string(regime));
  add_params(r, p);
  r.add("total_weight", sd.total_weight());
  r.add("plus_weight", w_plus);
  r.add("minus_weight", w_minus);
  r.add("mixed_weight", w_mixed);
  r.add("plus_weight_in_band", w_plus_band);
  r.add("minus_weight_in_band", w_minus_band);
  r.add("fit_window_lo_peV", fopt.window_lo);
  r.add("fit_window_hi_peV", fopt.window_hi);

  for (Branch br : {Branch::Minus, Branch::Plus}) {
    const std::string pre = std::string(to_string(br)) + "_fit_";
    try {
      const auto fit = fit_lorentzian(sd, br, fopt);
      r.add(pre + "center_peV", fit.center);
      r.add(pre + "center_over_d_eps", (fit.center - p.E_g) / p.d_eps);
      r.add(pre + "half_width_peV", fit.half_width);
      r.add(pre + "half_width_over_d_eps", fit.half_width / p.d_eps);
      r.add(pre + "amplitude", fit.amplitude);
      r.add(pre + "rms_residual", fit.rms_residual);
      r.add(pre + "points", fit.points);
      r.add(pre + "iterations", fit.iterations);
      r.add(pre + "converged", fit.converged);
    } catch (const ComputationError &e) {
      r.add(pre + "error", std::string(e.what()));
    }
  }

  const auto couplings = environment_couplings(p, Branch::Minus);
  const auto sigma = self_energy(p, couplings, p.E_g);
  r.add("minus_self_energy_re_peV", sigma.value.real());
  r.add("minus_self_energy_im_peV", sigma.value.imag());
  r.add("minus_self_energy_in_band", sigma.in_band);
  write_file(dir / "lorentzian.txt", r.str());

  // The minus-branch weight of g_alpha is half the spectral density of g-.
  std::string overlay = "E_peV,discrete_density,green_density\n";
  for (const auto &e : sd.entries) {
    if (e.branch != Branch::Minus || e.energy < fopt.window_lo || e.energy > fopt.window_hi)
      continue;
    overlay += format_double(e.energy) + ',' + format_double(e.weight / p.d_eps) + ',' +
               format_double(0.5 * green_density(p, couplings, e.energy)) + '\n';
  }
  write_file(dir / "overlay.csv", overlay);

  out << "regime = " << to_string(regime) << "\n"
      << "wrote " << (dir / "spectrum.csv").string() << ", lorentzian.txt, overlay.csv\n";
}

void cmd_verify(const CommonOptions &o, std::ostream &out) {
  const auto cfg = load(o);
  const auto &p = cfg.params;
  const BasisMap b(p.N);
  const auto t = build_transform(b);
  const auto blocks = symmetry_blocks(p, t);
  const auto es_minus = diagonalize(blocks.minus);
  const auto dir = prepare_out(o);

  KeyValueReport r;
  add_params(r, p);
  r.add("regime", to_string(classify_regime(p.V, p.dV)));

  const auto est = perturbative_estimates(p);
  r.add("coupling_minus_peV", est.coupling_minus);
  r.add("coupling_plus_peV", est.coupling_plus);
  r.add("overlap_scale", est.overlap_scale);
  r.add("onshell_slope", est.onshell_slope);
  r.add("dyson_prefactor_peV", est.dyson_prefactor);
  r.add("gamma_in_band_per_peV", est.gamma_in_band);
  r.add("second_order_width_peV", est.second_order_width);

  std::string csv = "E_kappa_peV,exact_overlap,predicted_overlap\n";
  try {
    const auto cmp = validate_against_exact(p, es_minus);
    r.add("nearshell_states", cmp.states);
    r.add("loglog_slope", cmp.slope);
    r.add("loglog_intercept", cmp.intercept);
    r.add("exact_prefactor_peV", cmp.prefactor);
    r.add("predicted_prefactor_peV", cmp.predicted_prefactor);
    r.add("prefactor_ratio", cmp.scale_ratio);
    r.add("max_nearshell_overlap", cmp.max_overlap);
    for (const auto &row : cmp.rows)
      csv += format_double(row.energy) + ',' + format_double(row.exact_overlap) + ',' +
             format_double(row.predicted_overlap) + '\n';
  } catch (const ComputationError &e) {
    r.add("exact_comparison_error", std::string(e.what()));
  }

  if (p.N >= 4 && p.W > 0) {
    const int level = p.N / 2 + 2;
    const auto num = projected_onshell_elements(p, blocks.minus, level, level + 1);
    const auto closed = onshell_matrix_elements(p, num.e_kappa);
    r.add("projected_level", level);
    r.add("projected_g_elem_numeric_peV", num.g_elem);
    r.add("projected_g_elem_closed_peV", closed.g_elem);
    r.add("projected_kappa_kappa_numeric_peV", num.kappa_kappa);
    r.add("projected_kappa_kappa_closed_peV",
          kappa_kappa_element(p, num.e_kappa, num.e_lambda, false));
    r.add("projected_overlap", num.overlap);
  }

  if (p.E_g == p.band_center) {
    ModelParams q = p;
    q.degenerate_continuum = true;
    const auto bq = symmetry_blocks(q, t);
    const auto ev = diagonalize(bq.minus).eigenvalues;
    const auto red = degenerate_reduction(q);
    std::vector<double> expected(q.N, red.E1);
    expected.push_back(red.E2);
    expected.push_back(red.E3);
    std::sort(expected.begin(), expected.end());
    double dev = 0;
    for (int i = 0; i < ev.size(); ++i) dev = std::max(dev, std::abs(ev(i) - expected[i]));
    r.add("degenerate_E2_peV", red.E2);
    r.add("degenerate_E3_peV", red.E3);
    if (q.E_w != q.band_center) r.add("degenerate_E3_leading_order_peV", q.band_center + degenerate_e3_leading_order(q));
    r.add("degenerate_max_eigenvalue_deviation_peV", dev);
  }

  try {
    const auto es = lift_blocks(diagonalize(blocks.plus), es_minus, t);
    const auto sd = spectral_distribution(es, t, b);
    const auto fit = fit_lorentzian(sd, Branch::Minus, band_fit_options(p));
    const auto sigma = self_energy(p, environment_couplings(p, Branch::Minus), p.E_g);
    r.add("minus_fit_half_width_peV", fit.half_width);
    r.add("minus_self_energy_width_peV", -sigma.value.imag());
    r.add("width_ratio_self_energy_over_fit", -sigma.value.imag() / fit.half_width);
    r.add("width_ratio_second_order_over_fit", est.second_order_width / fit.half_width);
  } catch (const ComputationError &e) {
    r.add("width_check_error", std::string(e.what()));
  }

  write_file(dir / "verification.txt", r.str());
  write_file(dir / "verification.csv", csv);
  out << r.str();
}

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

std::vector<std::string> split_values(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    const auto a = cur.find_first_not_of(" \t");
    const auto z = cur.find_last_not_of(" \t");
    if (a == std::string::npos) throw ConfigError("empty value in --sweep-values");
    out.push_back(cur.substr(a, z - a + 1));
  }
  if (out.empty()) throw ConfigError("--sweep-values needs at least one value");
  return out;
}

void cmd_sweep(const CommonOptions &o, const std::vector<std::string> &keys,
               const std::vector<std::string> &values, std::ostream &out) {
  if (keys.empty()) throw ConfigError("sweep needs --sweep-key");
  if (keys.size() != values.size())
    throw ConfigError("each --sweep-key needs exactly one --sweep-values list");
  const auto base = load(o);

  std::vector<SweepAxis> axes;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] == "t_max" || keys[i] == "t_steps")
      throw ConfigError("sweep key '" + keys[i] + "' is not a model parameter");
    axes.push_back({keys[i], split_values(values[i])});
    RunConfig probe = base;
    for (const auto &v : axes.back().values) set_config_value(probe, keys[i], v);
  }

  // Cartesian grid, first axis outermost.
  std::vector<std::vector<std::string>> grid{{}};
  for (const auto &ax : axes) {
    std::vector<std::vector<std::string>> next;
    for (const auto &row : grid)
      for (const auto &v : ax.values) {
        auto r = row;
        r.push_back(v);
        next.push_back(std::move(r));
      }
    grid = std::move(next);
  }

  std::vector<std::string> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      std::string prefix = std::to_string(i);
      for (const auto &v : grid[i]) prefix += ',' + v;
      try {
        RunConfig cfg = base;
        for (std::size_t k = 0; k < axes.size(); ++k) set_config_value(cfg, axes[k].key, grid[i][k]);
        rows[i] = prefix + ',' + summary_row(analyze_point(cfg, o.analysis));
      } catch (const std::exception &e) {
        rows[i] = prefix + ",,,,,,,,," + "error: " + csv_safe(e.what());
      }
    }
  };
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int n_threads = std::clamp(o.threads > 0 ? o.threads : hw, 1,
                                   static_cast<int>(std::max<std::size_t>(grid.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  std::string csv = "index";
  for (const auto &ax : axes) csv += ',' + ax.key;
  csv += ',' + summary_header() + '\n';
  for (const auto &row : rows) csv += row + '\n';
  const auto dir = prepare_out(o);
  write_file(dir / "regime_map.csv", csv);
  out << "wrote " << (dir / "regime_map.csv").string() << " (" << grid.size() << " points, "
      << n_threads << " threads)\n";
}

void add_common(CLI::App *sub, CommonOptions &o) {
  sub->add_option("--config", o.config_path, "key = value config file")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out_dir, "output directory (created if missing)");
  sub->add_option("--threads", o.threads, "worker threads (0: one per core)")->check(CLI::NonNegativeNumber);
  sub->add_flag("--degenerate-continuum", o.degenerate, "collapse all continuum levels onto band_center");
}

void add_analysis(CLI::App *sub, CommonOptions &o) {
  sub->add_flag("!--no-environment", o.analysis.include_environment,
                "side occupation without the continuum states");
  sub->add_option("--hi", o.analysis.hi, "upper hysteresis threshold");
  sub->add_option("--lo", o.analysis.lo, "lower hysteresis threshold");
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Coherent telegraph dynamics of a two-sided system coupled to a discretized continuum"};
  app.require_subcommand(1);

  CommonOptions opts;
  bool dump_blocks = false, dump_eigen = false;
  std::vector<std::string> sweep_keys, sweep_values;

  auto *sim = app.add_subcommand("simulate", "time series, switch events and regime report");
  add_common(sim, opts);
  add_analysis(sim, opts);
  sim->add_flag("--dump-blocks", dump_blocks, "write H+ and H- as CSV");
  sim->add_flag("--dump-eigen", dump_eigen, "write eigenvalues and g_alpha weights");

  auto *spectrum_cmd = app.add_subcommand("spectrum", "spectral distribution and Lorentzian fits");
  add_common(spectrum_cmd, opts);

  auto *ver = app.add_subcommand("verify", "perturbative estimates against exact diagonalization");
  add_common(ver, opts);

  auto *sweep = app.add_subcommand("sweep", "regime map over a parameter grid");
  add_common(sweep, opts);
  add_analysis(sweep, opts);
  sweep->add_option("--sweep-key", sweep_keys, "parameter to vary (repeatable)");
  sweep->add_option("--sweep-values", sweep_values, "comma-separated values (one list per key)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim) cmd_simulate(opts, dump_blocks, dump_eigen, out);
    else if (*spectrum_cmd) cmd_spectrum(opts, out);
    else if (*ver) cmd_verify(opts, out);
    else if (*sweep) cmd_sweep(opts, sweep_keys, sweep_values, out);
  } catch (const ConfigError &e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitOk;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  std::vector<const char *> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qtel");
  for (const auto &a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qtel::cli
