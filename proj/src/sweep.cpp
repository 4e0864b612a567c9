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

#include "xkerr/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "xkerr/cascaded.hpp"
#include "xkerr/nelder_mead.hpp"
#include "xkerr/parallel.hpp"

namespace xkerr {

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Beta: return "beta";
    case SweepAxis::DeltaB: return "delta_b";
    case SweepAxis::DeltaC: return "delta_c";
    case SweepAxis::GammaCon: return "gamma_con";
    case SweepAxis::GammaC: return "gamma_c";
  }
  return "?";
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  for (SweepAxis a : {SweepAxis::Beta, SweepAxis::DeltaB, SweepAxis::DeltaC, SweepAxis::GammaCon, SweepAxis::GammaC})
    if (name == sweep_axis_name(a)) return a;
  throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

void set_axis(SystemParams& p, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::Beta: p.beta = value; break;
    case SweepAxis::DeltaB: p.delta_b = value; break;
    case SweepAxis::DeltaC: p.delta_c = value; break;
    case SweepAxis::GammaCon: p.gamma_con = value; break;
    case SweepAxis::GammaC: p.gamma_c = value; break;
  }
}

double get_axis(const SystemParams& p, SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Beta: return p.beta;
    case SweepAxis::DeltaB: return p.delta_b;
    case SweepAxis::DeltaC: return p.delta_c;
    case SweepAxis::GammaCon: return p.gamma_con;
    case SweepAxis::GammaC: return p.gamma_c;
  }
  return 0.0;
}

void SweepSpec::validate() const {
  fixed.validate();
  if (axes.empty()) throw std::invalid_argument("sweep needs at least one axis");
  for (const AxisGrid& g : axes) {
    if (g.values.empty()) throw std::invalid_argument(std::string("sweep axis ") + sweep_axis_name(g.axis) + " is empty");
    for (double v : g.values)
      if (!std::isfinite(v))
        throw std::invalid_argument(std::string("sweep axis ") + sweep_axis_name(g.axis) + " has a non-finite value");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (method == SnrMethod::StochasticEnsemble) {
    if (n_traj < 2) throw std::invalid_argument("n_traj must be at least 2");
    if (pulse != PulseKind::Exponential)
      throw std::invalid_argument("the stochastic method needs the exponential pulse");
  }
}

SnrResult evaluate_point(const SweepSpec& spec, const SystemParams& p) {
  p.validate();
  const PulseShape pulse = PulseShape::of_kind(spec.pulse, p.gamma_con);
  const TimeGrid grid = default_grid(pulse, p.gamma_b, spec.dt, spec.ring_down);
  if (spec.method == SnrMethod::RegressionAnalytic) return estimate_snr_deterministic(p, pulse, grid, spec.lo_phase);
  const CascadedModel model(p, spec.lo_phase);
  const SignalSamples s1 = simulate_ensemble(model, grid, spec.n_traj, spec.base_seed, 1, spec.threads);
  const SignalSamples s0 = simulate_ensemble(model, grid, spec.n_traj, spec.base_seed + spec.n_traj, 0, spec.threads);
  return estimate_snr_stochastic(s1, s0);
}

std::vector<SweepPoint> sweep(const SweepSpec& spec) {
  spec.validate();
  std::size_t total = 1;
  for (const AxisGrid& g : spec.axes) total *= g.values.size();

  std::vector<SweepPoint> table(total);
  for (std::size_t i = 0; i < total; ++i) {
    SweepPoint& pt = table[i];
    pt.params = spec.fixed;
    pt.coords.resize(spec.axes.size());
    std::size_t rest = i;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const AxisGrid& g = spec.axes[a];
      pt.coords[a] = g.values[rest % g.values.size()];
      rest /= g.values.size();
      set_axis(pt.params, g.axis, pt.coords[a]);
    }
  }

  auto run_one = [&](std::size_t i) {
    try {
      table[i].result = evaluate_point(spec, table[i].params);
    } catch (const std::exception& e) {
      table[i].error = e.what();
    }
  };
  if (spec.method == SnrMethod::StochasticEnsemble) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    parallel_for(total, spec.threads, run_one);
  }
  return table;
}

const SweepPoint* best_point(const std::vector<SweepPoint>& table) {
  const SweepPoint* best = nullptr;
  for (const SweepPoint& pt : table) {
    if (!pt.result || !std::isfinite(pt.result->snr)) continue;
    if (best == nullptr || pt.result->snr > best->result->snr ||
        (pt.result->snr == best->result->snr && pt.coords < best->coords))
      best = &pt;
  }
  return best;
}

std::vector<double> linspace_step(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw std::invalid_argument("range needs step > 0 and stop >= start");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-6));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

OptimizeResult optimize(const SweepSpec& spec) {
  if (spec.method != SnrMethod::RegressionAnalytic)
    throw std::invalid_argument("optimisation over Monte Carlo estimates is not supported; use the deterministic method");
  OptimizeResult out;
  out.table = sweep(spec);
  const SweepPoint* best = best_point(out.table);
  if (best == nullptr) throw std::runtime_error("optimisation: every grid point failed");
  out.grid_best = *best;
  out.best = *best;
  if (spec.optimizer == Optimizer::GridOnly) return out;

  // Only axes with more than one value are free.
  std::vector<std::size_t> free;
  for (std::size_t a = 0; a < spec.axes.size(); ++a)
    if (spec.axes[a].values.size() > 1) free.push_back(a);
  if (free.empty()) return out;

  std::vector<double> x0, step, lo, hi;
  for (std::size_t a : free) {
    const auto& v = spec.axes[a].values;
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    lo.push_back(*mn);
    hi.push_back(*mx);
    x0.push_back(best->coords[a]);
    const double h = (*mx - *mn) / static_cast<double>(v.size() - 1);
    // Step inward when the grid optimum sits on the upper edge.
    step.push_back(best->coords[a] + h > *mx ? -h : h);
  }

  auto make = [&](const std::vector<double>& x) {
    SweepPoint pt = out.grid_best;
    for (std::size_t i = 0; i < free.size(); ++i) {
      pt.coords[free[i]] = x[i];
      set_axis(pt.params, spec.axes[free[i]].axis, x[i]);
    }
    return pt;
  };
  auto objective = [&](const std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return std::numeric_limits<double>::quiet_NaN();
    try {
      return -evaluate_point(spec, make(x).params).snr;
    } catch (const std::exception&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const NelderMeadResult nm = nelder_mead(objective, x0, step);
  out.iterations = nm.iterations;
  out.evaluations = nm.evaluations;
  if (std::isfinite(nm.f) && -nm.f > out.grid_best.result->snr) {
    out.best = make(nm.x);
    out.best.result = evaluate_point(spec, out.best.params);
    out.refined = true;
  }
  return out;
}

}  // namespace xkerr
