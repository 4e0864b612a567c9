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

#include "xkerr/snr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "xkerr/error.hpp"
#include "xkerr/squeezing.hpp"

namespace xkerr {

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  m.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.var = ss / (n - 1.0);
  return m;
}

void finish(SnrResult& r, double var0, double var1) {
  r.sigma_s0 = std::sqrt(std::max(var0, 0.0));
  r.sigma_s1 = std::sqrt(std::max(var1, 0.0));
  r.sigma_s = std::sqrt(0.5 * (var0 + var1));
  if (!(r.sigma_s > 0.0)) throw NumericalError("signal deviation is not positive");
  r.snr = std::abs(r.mean_s1) / (std::sqrt(2.0) * r.sigma_s);
}

}  // namespace

const char* snr_method_name(SnrMethod method) {
  return method == SnrMethod::StochasticEnsemble ? "stochastic" : "deterministic";
}

SnrResult estimate_snr_stochastic(const SignalSamples& s1, const SignalSamples& s0) {
  if (s1.values.size() < 2 || s0.values.size() < 2)
    throw InsufficientSamples("SNR estimate needs at least two trajectories per photon number");
  const Moments m1 = moments(s1.values);
  const Moments m0 = moments(s0.values);
  SnrResult r;
  r.method = SnrMethod::StochasticEnsemble;
  r.n_traj = s1.values.size();
  r.mean_s1 = m1.mean;
  r.mean_s0 = m0.mean;
  finish(r, m0.var, m1.var);

  // First-order propagation: the mean and the pooled deviation are treated as
  // independent, with SE(sigma) ~ sigma / sqrt(2 (n0 + n1 - 2)).
  const double n1 = static_cast<double>(s1.values.size());
  const double n0 = static_cast<double>(s0.values.size());
  const double se_mean = std::sqrt(m1.var / n1);
  const double se_sigma = r.sigma_s / std::sqrt(2.0 * (n0 + n1 - 2.0));
  const double d_mean = se_mean / (std::sqrt(2.0) * r.sigma_s);
  const double d_sigma = r.snr * se_sigma / r.sigma_s;
  r.stderr_snr = std::hypot(d_mean, d_sigma);
  return r;
}

SnrResult snr_from_statistics(const SignalStatistics& s1, const SignalStatistics& s0) {
  SnrResult r;
  r.method = SnrMethod::RegressionAnalytic;
  r.mean_s1 = s1.mean;
  r.mean_s0 = s0.mean;
  finish(r, s0.variance, s1.variance);
  return r;
}

SnrResult estimate_snr_deterministic(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid,
                                     double lo_phase) {
  const SignalStatistics s1 = signal_statistics(p, pulse, grid, 1, lo_phase);
  const SignalStatistics s0 = signal_statistics(p, pulse, grid, 0, lo_phase);
  return snr_from_statistics(s1, s0);
}

SnrResult estimate_snr_squeezed(const SystemParams& p, const SqueezeParams& sq, const PulseShape& pulse,
                                const TimeGrid& grid, double lo_phase) {
  const SignalStatistics s1 = squeezed_signal_statistics(p, sq, pulse, grid, 1, lo_phase);
  const SignalStatistics s0 = squeezed_signal_statistics(p, sq, pulse, grid, 0, lo_phase);
  return snr_from_statistics(s1, s0);
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Histogram make_histogram(const std::vector<double>& s0, const std::vector<double>& s1) {
  std::vector<double> pooled;
  pooled.reserve(s0.size() + s1.size());
  pooled.insert(pooled.end(), s0.begin(), s0.end());
  pooled.insert(pooled.end(), s1.begin(), s1.end());
  if (pooled.empty()) throw InsufficientSamples("histogram of empty samples");
  for (double x : pooled)
    if (!std::isfinite(x)) throw NumericalError("histogram sample is not finite");
  std::sort(pooled.begin(), pooled.end());

  const double lo = pooled.front();
  double hi = pooled.back();
  const double iqr = sorted_quantile(pooled, 0.75) - sorted_quantile(pooled, 0.25);
  const double width = 2.0 * iqr / std::cbrt(static_cast<double>(pooled.size()));
  std::size_t bins = 1;
  if (hi > lo && width > 0.0) bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
  bins = std::max<std::size_t>(bins, 1);
  if (!(hi > lo)) hi = lo + 1.0;

  Histogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  h.bin_edges.back() = hi;
  h.counts_n0.assign(bins, 0);
  h.counts_n1.assign(bins, 0);
  auto fill = [&](const std::vector<double>& v, std::vector<std::size_t>& counts) {
    for (double x : v) {
      auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), x);
      std::size_t idx = static_cast<std::size_t>(it - h.bin_edges.begin());
      idx = idx == 0 ? 0 : idx - 1;
      counts[std::min(idx, bins - 1)] += 1;
    }
  };
  fill(s0, h.counts_n0);
  fill(s1, h.counts_n1);
  return h;
}

}  // namespace xkerr
