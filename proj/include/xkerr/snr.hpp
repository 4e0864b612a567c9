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

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "xkerr/cascaded.hpp"
#include "xkerr/pulse.hpp"
#include "xkerr/regression.hpp"
#include "xkerr/squeeze_params.hpp"

namespace xkerr {

enum class SnrMethod { StochasticEnsemble, RegressionAnalytic };

const char* snr_method_name(SnrMethod method);

// snr = |E[S_1]| / (sqrt(2) sigma_s) with sigma_s^2 = (Var[S_0] + Var[S_1]) / 2.
// The per-class deviations are kept so the pooling premise can be checked.
struct SnrResult {
  double mean_s1 = 0.0;
  double mean_s0 = 0.0;
  double sigma_s = 0.0;
  double sigma_s0 = 0.0;
  double sigma_s1 = 0.0;
  double snr = 0.0;
  std::optional<double> stderr_snr;  // StochasticEnsemble only
  std::size_t n_traj = 0;
  SnrMethod method = SnrMethod::RegressionAnalytic;
};

// Throws InsufficientSamples if either ensemble has fewer than two values.
SnrResult estimate_snr_stochastic(const SignalSamples& s1, const SignalSamples& s0);

SnrResult snr_from_statistics(const SignalStatistics& s1, const SignalStatistics& s0);

// Hierarchy mean plus regression variance for both photon numbers.
SnrResult estimate_snr_deterministic(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid,
                                     double lo_phase = kDefaultLoPhase);
SnrResult estimate_snr_squeezed(const SystemParams& p, const SqueezeParams& sq, const PulseShape& pulse,
                                const TimeGrid& grid, double lo_phase = kDefaultLoPhase);

// Freedman-Diaconis bins over the pooled samples. The last bin is closed.
struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts_n0;
  std::vector<std::size_t> counts_n1;
};

Histogram make_histogram(const std::vector<double>& s0, const std::vector<double>& s1);

// Linear-interpolation sample quantile of sorted data, q in [0, 1].
double sorted_quantile(const std::vector<double>& sorted, double q);

}  // namespace xkerr
