// Copyright 2026 The xkerr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xkerr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "xkerr/cascade_chain.hpp"
#include "xkerr/cascaded.hpp"
#include "xkerr/csv.hpp"
#include "xkerr/error.hpp"
#include "xkerr/fock_hierarchy.hpp"
#include "xkerr/four_level.hpp"
#include "xkerr/parallel.hpp"
#include "xkerr/ratio_sweep.hpp"
#include "xkerr/rescaling.hpp"
#include "xkerr/snr.hpp"
#include "xkerr/squeezing.hpp"
#include "xkerr/sweep.hpp"

namespace xkerr {

namespace fs = std::filesystem;

namespace {

using Summary = std::vector<std::string>;

std::string kv(const std::string& key, double value) { return key + ": " + format_double(value); }
std::string kv(const std::string& key, const std::string& value) { return key + ": " + value; }
const char* yes_no(bool b) { return b ? "yes" : "no"; }

PulseShape config_pulse(const RunConfig& cfg) { return PulseShape::of_kind(cfg.pulse, cfg.params.gamma_con); }
TimeGrid config_grid(const RunConfig& cfg, const PulseShape& pulse) {
  return default_grid(pulse, cfg.params.gamma_b, cfg.dt, cfg.ring_down);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

Summary polarisation(const RunConfig& cfg, const fs::path& out) {
  const PulseShape pulse = config_pulse(cfg);
  const TimeGrid grid = config_grid(cfg, pulse);
  const HierarchyTrajectory tr = evolve_hierarchy(cfg.params, pulse, grid);
  CsvTable t(csv_schema::polarisation);
  double peak = 0.0;
  for (std::size_t k = 0; k < grid.n_points(); ++k) {
    const double tk = grid.t(k);
    t.row({format_double(tk), format_double(std::norm(amplitude(pulse, tk))), format_double(tr.y[k])});
    peak = std::max(peak, std::abs(tr.y[k]));
  }
  t.write((out / "polarisation.csv").string());
  const double s1 = trapezoid(tr.y, grid.dt);
  const double bound = std::sqrt(cfg.params.gamma_c);
  return {kv("pulse", pulse_kind_name(cfg.pulse)), kv("T", grid.T()), kv("expected_signal_s1", s1),
          kv("peak_abs_y", peak), kv("bounded |<y>| <= sqrt(gamma_c)", yes_no(peak <= bound)),
          kv("bounded |E[S1]| <= sqrt(gamma_c) T", yes_no(std::abs(s1) <= bound * grid.T()))};
}

void snr_row(CsvTable& t, double x, const SweepPoint& pt) {
  if (pt.result) {
    t.row({format_double(x), format_double(pt.result->mean_s1), format_double(pt.result->sigma_s),
           format_double(pt.result->snr), snr_method_name(pt.result->method)});
  } else {
    const std::string nan = format_double(std::nan(""));
    t.row({format_double(x), nan, nan, nan, "failed"});
  }
}

std::size_t axis_index(const RunConfig& cfg, SweepAxis axis) {
  for (std::size_t i = 0; i < cfg.axes.size(); ++i)
    if (cfg.axes[i].axis == axis) return i;
  throw ConfigError(std::string("experiment needs sweep.") + sweep_axis_name(axis));
}

Summary failures(const std::vector<SweepPoint>& table) {
  Summary s;
  std::size_t n = 0;
  for (const SweepPoint& pt : table)
    if (!pt.result) {
      ++n;
      s.push_back("failed point: " + pt.error);
    }
  s.insert(s.begin(), kv("failed_points", std::to_string(n)));
  return s;
}

Summary snr_beta(const RunConfig& cfg, const fs::path& out) {
  const std::size_t bi = axis_index(cfg, SweepAxis::Beta);
  const SweepSpec spec = cfg.sweep_spec();
  CsvTable t(csv_schema::snr_beta);
  Summary s;
  std::vector<SweepPoint> table;
  if (cfg.method == SnrMethod::RegressionAnalytic) {
    const OptimizeResult opt = optimize(spec);
    table = opt.table;
    s.push_back(kv("grid_best_beta", opt.grid_best.params.beta));
    s.push_back(kv("grid_best_snr", opt.grid_best.result->snr));
    s.push_back(kv("optimized_beta", opt.best.params.beta));
    s.push_back(kv("optimized_snr", opt.best.result->snr));
    s.push_back(kv("simplex_iterations", std::to_string(opt.iterations)));
    s.push_back(kv("optimized SNR < 1", yes_no(opt.best.result->snr < 1.0)));
  } else {
    table = sweep(spec);
    const SweepPoint* best = best_point(table);
    if (best == nullptr) throw NumericalError("every sweep point failed");
    s.push_back(kv("best_beta", best->params.beta));
    s.push_back(kv("best_snr", best->result->snr));
    s.push_back(kv("best_snr_stderr", best->result->stderr_snr.value_or(0.0)));
  }
  for (const SweepPoint& pt : table) snr_row(t, pt.coords[bi], pt);
  t.write((out / "snr_beta.csv").string());
  const Summary f = failures(table);
  s.insert(s.end(), f.begin(), f.end());
  return s;
}

Summary histogram(const RunConfig& cfg, const fs::path& out) {
  const PulseShape pulse = config_pulse(cfg);
  const TimeGrid grid = config_grid(cfg, pulse);
  const CascadedModel model(cfg.params, cfg.lo_phase);
  const SignalSamples s1 = simulate_ensemble(model, grid, cfg.n_traj, cfg.base_seed, 1, cfg.threads);
  const SignalSamples s0 = simulate_ensemble(model, grid, cfg.n_traj, cfg.base_seed + cfg.n_traj, 0, cfg.threads);
  const Histogram h = make_histogram(s0.values, s1.values);
  CsvTable t(csv_schema::histogram);
  for (std::size_t i = 0; i + 1 < h.bin_edges.size(); ++i)
    t.row({format_double(h.bin_edges[i]), format_double(h.bin_edges[i + 1]), std::to_string(h.counts_n0[i]),
           std::to_string(h.counts_n1[i])});
  t.write((out / "histogram.csv").string());
  const SnrResult st = estimate_snr_stochastic(s1, s0);
  const SnrResult det = estimate_snr_deterministic(cfg.params, pulse, grid, cfg.lo_phase);
  const double bound = std::sqrt(cfg.params.gamma_c);
  const double max_y = std::max(s0.max_abs_y, s1.max_abs_y);
  return {kv("n_traj_per_class", std::to_string(cfg.n_traj)),
          kv("stochastic_snr", st.snr),
          kv("stochastic_snr_stderr", st.stderr_snr.value_or(0.0)),
          kv("stochastic_mean_s1", st.mean_s1),
          kv("stochastic_mean_s0", st.mean_s0),
          kv("stochastic_sigma_s0", st.sigma_s0),
          kv("stochastic_sigma_s1", st.sigma_s1),
          kv("deterministic_snr", det.snr),
          kv("agreement |diff| / stderr", std::abs(st.snr - det.snr) / st.stderr_snr.value_or(1.0)),
          kv("max_abs_record_mean", max_y),
          kv("bounded |<y>| <= sqrt(gamma_c)", yes_no(max_y <= bound))};
}

Summary detuning_map(const RunConfig& cfg, const fs::path& out) {
  const std::size_t bi = axis_index(cfg, SweepAxis::DeltaB);
  const std::size_t ci = axis_index(cfg, SweepAxis::DeltaC);
  SweepSpec spec = cfg.sweep_spec();
  spec.optimizer = Optimizer::GridOnly;
  const std::vector<SweepPoint> table = sweep(spec);
  CsvTable t(csv_schema::detuning_map);
  for (const SweepPoint& pt : table)
    t.row({format_double(pt.coords[bi]), format_double(pt.coords[ci]),
           format_double(pt.result ? pt.result->snr : std::nan(""))});
  t.write((out / "detuning_map.csv").string());
  const SweepPoint* best = best_point(table);
  if (best == nullptr) throw NumericalError("every sweep point failed");
  Summary s = {kv("argmax_delta_b", best->coords[bi]), kv("argmax_delta_c", best->coords[ci]),
               kv("max_snr", best->result->snr)};
  const Summary f = failures(table);
  s.insert(s.end(), f.begin(), f.end());
  return s;
}

Summary squeeze(const RunConfig& cfg, const fs::path& out) {
  const PulseShape pulse = config_pulse(cfg);
  const TimeGrid grid = config_grid(cfg, pulse);
  std::vector<double> snr(cfg.squeeze_r.size());
  parallel_for(cfg.squeeze_r.size(), cfg.threads, [&](std::size_t i) {
    const SqueezeParams sq{cfg.squeeze_r[i], cfg.squeeze_theta};
    snr[i] = estimate_snr_squeezed(cfg.params, sq, pulse, grid, cfg.lo_phase).snr;
  });
  CsvTable t(csv_schema::squeeze);
  for (std::size_t i = 0; i < snr.size(); ++i) t.row({format_double(squeezing_db(cfg.squeeze_r[i])), format_double(snr[i])});
  t.write((out / "squeeze.csv").string());
  const auto best = std::max_element(snr.begin(), snr.end());
  const double base = estimate_snr_squeezed(cfg.params, SqueezeParams{0.0, cfg.squeeze_theta}, pulse, grid, cfg.lo_phase).snr;
  const std::size_t bi = static_cast<std::size_t>(best - snr.begin());
  return {kv("theta", cfg.squeeze_theta),
          kv("L_at_best_r", SqueezeParams{cfg.squeeze_r[bi], cfg.squeeze_theta}.L()),
          kv("snr_r0", base),
          kv("best_r", cfg.squeeze_r[bi]),
          kv("best_snr", *best),
          kv("best_over_r0", *best / base),
          kv("max SNR < 1", yes_no(*best < 1.0))};
}

Summary ensemble(const RunConfig& cfg, const fs::path& out) {
  const PulseShape pulse = config_pulse(cfg);
  const TimeGrid grid = config_grid(cfg, pulse);
  const double base = estimate_snr_deterministic(cfg.params, pulse, grid, cfg.lo_phase).snr;
  CsvTable t(csv_schema::ensemble);
  double worst = 0.0;
  for (int n : cfg.ensemble_n) {
    const RescaledParams rp = ensemble_rescaled_params(cfg.params, n);
    const PulseShape pn = PulseShape::of_kind(cfg.pulse, rp.params.gamma_con);
    const double s = estimate_snr_deterministic(rp.params, pn, rescale_grid(grid, n), cfg.lo_phase).snr;
    worst = std::max(worst, std::abs(s - base));
    t.row({std::to_string(n), format_double(base), format_double(s), format_double(std::abs(s - base))});
  }
  t.write((out / "ensemble.csv").string());
  return {kv("snr_single", base), kv("max_abs_diff", worst), kv("invariant within 1e-8", yes_no(worst < 1e-8))};
}

Summary transmission_spectrum(const RunConfig& cfg, const fs::path& out) {
  CsvTable t(csv_schema::transmission);
  double max_abs = 0.0;
  for (double d : cfg.transmission_delta) {
    const cplx tr = transmission(cfg.params.delta_b + d, cfg.params.delta_c + d, cfg.transmission_alpha, cfg.params,
                                 cfg.v_g, cfg.variant);
    max_abs = std::max(max_abs, std::abs(tr));
    t.row({format_double(d), format_double(tr.real()), format_double(tr.imag()), format_double(std::norm(tr))});
  }
  t.write((out / "transmission.csv").string());
  const double width = transparency_width(cfg.params, cfg.transmission_alpha, cfg.v_g, cfg.variant);
  return {kv("alpha", cfg.transmission_alpha), kv("v_g", cfg.v_g), kv("window_fwhm", width),
          kv("two_sqrt_gamma_c_alpha", 2.0 * std::sqrt(cfg.params.gamma_c) * cfg.transmission_alpha),
          kv("max_abs_t", max_abs), kv("|t| <= 1 on scan", yes_no(max_abs <= 1.0 + 1e-12))};
}

Summary cascade(const RunConfig& cfg, const fs::path& out) {
  SweepSpec spec = cfg.sweep_spec();
  spec.method = SnrMethod::RegressionAnalytic;
  const OptimizeResult opt = optimize(spec);
  const double snr1 = opt.best.result->snr;
  const double alpha = opt.best.params.beta;
  const cplx tr = transmission(cfg.params.delta_b, cfg.params.delta_c, alpha, cfg.params, cfg.v_g, cfg.variant);
  const double T = std::min(1.0, std::norm(tr));
  CsvTable t(csv_schema::cascade);
  double worst = 0.0;
  for (int n = 1; n <= cfg.cascade_n_max; ++n) {
    const double s = snr_cascade(n, snr1, T);
    worst = std::max(worst, s);
    t.row({std::to_string(n), format_double(s)});
  }
  t.write((out / "cascade.csv").string());
  return {kv("snr_1", snr1), kv("alpha_opt", alpha), kv("T_trans", T), kv("max_snr_n", worst),
          kv("all SNR_n < 1", yes_no(worst < 1.0))};
}

Summary fourlevel(const RunConfig& cfg, const fs::path& out) {
  const TimeGrid grid = TimeGrid::covering(cfg.four_level_t_end, cfg.dt);
  const PopulationComparison c = compare_four_level(cfg.four_level, grid);
  CsvTable t(csv_schema::fourlevel);
  for (std::size_t k = 0; k < c.t.size(); ++k)
    t.row({format_double(c.t[k]), format_double(c.pop4[k]), format_double(c.pop3[k]),
           format_double(std::abs(c.pop4[k] - c.pop3[k]))});
  t.write((out / "fourlevel.csv").string());
  Summary s = {kv("omega_drive", cfg.four_level.omega_drive), kv("sup_norm", c.sup_norm),
               kv("max_trace_error", c.max_trace_error)};
  double prev = INFINITY;
  bool decreasing = true;
  for (double om : cfg.four_level_omegas) {
    FourLevelParams f = FourLevelParams::resonant(om, cfg.four_level.delta_12);
    f.gamma_01 = cfg.four_level.gamma_01;
    f.gamma_12 = cfg.four_level.gamma_12;
    f.gamma_32 = cfg.four_level.gamma_32;
    f.alpha = cfg.four_level.alpha;
    f.beta_sig = cfg.four_level.beta_sig;
    const double sup = compare_four_level(f, grid).sup_norm;
    s.push_back(kv("sup_norm at omega " + format_double(om), sup));
    decreasing = decreasing && sup < prev;
    prev = sup;
  }
  if (!cfg.four_level_omegas.empty()) s.push_back(kv("strictly decreasing", yes_no(decreasing)));
  return s;
}

Summary ratio(const RunConfig& cfg, const fs::path& out) {
  SweepSpec spec = cfg.sweep_spec();
  spec.method = SnrMethod::RegressionAnalytic;
  const std::vector<RatioPoint> pts = ratio_sweep(cfg.ratios, spec);
  CsvTable t(csv_schema::ratio);
  bool all_below = true;
  Summary s;
  for (const RatioPoint& p : pts) {
    t.row({format_double(p.ratio), format_double(p.beta_opt), format_double(p.snr_opt)});
    all_below = all_below && p.snr_opt < 1.0;
    s.push_back(kv("optimum at ratio " + format_double(p.ratio), p.snr_opt));
  }
  t.write((out / "ratio.csv").string());
  s.push_back(kv("all optima < 1", yes_no(all_below)));
  return s;
}

}  // namespace

std::string experiment_csv(Experiment e) {
  switch (e) {
    case Experiment::Polarisation: return "polarisation.csv";
    case Experiment::SnrBetaSweep: return "snr_beta.csv";
    case Experiment::SnrHistogram: return "histogram.csv";
    case Experiment::DetuningMap: return "detuning_map.csv";
    case Experiment::SqueezeSweep: return "squeeze.csv";
    case Experiment::EnsembleRescale: return "ensemble.csv";
    case Experiment::TransmissionSpectrum: return "transmission.csv";
    case Experiment::CascadeSnr: return "cascade.csv";
    case Experiment::FourLevelCompare: return "fourlevel.csv";
    case Experiment::RatioSweep: return "ratio.csv";
  }
  return "";
}

RunReport run_experiment(const RunConfig& cfg) {
  const fs::path out(cfg.output_dir);
  fs::create_directories(out);
  const fs::path marker = out / "INCOMPLETE";
  write_text(marker, std::string("run of experiment ") + experiment_name(cfg.experiment) + " has not finished\n");
  write_text(out / "manifest.txt", manifest_text(cfg));

  Summary body;
  switch (cfg.experiment) {
    case Experiment::Polarisation: body = polarisation(cfg, out); break;
    case Experiment::SnrBetaSweep: body = snr_beta(cfg, out); break;
    case Experiment::SnrHistogram: body = histogram(cfg, out); break;
    case Experiment::DetuningMap: body = detuning_map(cfg, out); break;
    case Experiment::SqueezeSweep: body = squeeze(cfg, out); break;
    case Experiment::EnsembleRescale: body = ensemble(cfg, out); break;
    case Experiment::TransmissionSpectrum: body = transmission_spectrum(cfg, out); break;
    case Experiment::CascadeSnr: body = cascade(cfg, out); break;
    case Experiment::FourLevelCompare: body = fourlevel(cfg, out); break;
    case Experiment::RatioSweep: body = ratio(cfg, out); break;
  }

  RunReport report;
  report.summary.push_back(kv("experiment", experiment_name(cfg.experiment)));
  report.summary.insert(report.summary.end(), body.begin(), body.end());
  std::ostringstream text;
  for (const std::string& line : report.summary) text << line << "\n";
  write_text(out / "summary.txt", text.str());
  report.artifacts = {"manifest.txt", experiment_csv(cfg.experiment), "summary.txt"};
  fs::remove(marker);
  return report;
}

}  // namespace xkerr
