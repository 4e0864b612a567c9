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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xkerr/cascade_chain.hpp"
#include "xkerr/four_level.hpp"
#include "xkerr/pulse.hpp"
#include "xkerr/qutrit.hpp"
#include "xkerr/snr.hpp"
#include "xkerr/sweep.hpp"

namespace xkerr {

enum class Experiment {
  Polarisation,
  SnrBetaSweep,
  SnrHistogram,
  DetuningMap,
  SqueezeSweep,
  EnsembleRescale,
  TransmissionSpectrum,
  CascadeSnr,
  FourLevelCompare,
  RatioSweep,
};

const char* experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& name);  // throws ConfigError
const std::vector<Experiment>& all_experiments();

// Fully resolved run description. `resolved` holds every key with the text
// value that was used (explicit or default) and `defaulted` the keys that fell
// back to their defaults; together they form the run manifest.
struct RunConfig {
  Experiment experiment = Experiment::Polarisation;
  SystemParams params;
  PulseKind pulse = PulseKind::Exponential;
  double lo_phase = kDefaultLoPhase;

  double dt = kDefaultDt;
  double ring_down = kDefaultRingDown;
  std::size_t n_traj = 5000;
  std::uint64_t base_seed = 0;
  unsigned threads = 0;
  std::string output_dir = "out";
  SnrMethod method = SnrMethod::RegressionAnalytic;
  Optimizer optimizer = Optimizer::GridThenSimplex;

  std::vector<AxisGrid> axes;  // sweep.* in the order beta, delta_b, delta_c, gamma_con

  std::vector<double> squeeze_r;
  double squeeze_theta = 0.0;

  std::vector<int> ensemble_n;

  std::vector<double> transmission_delta;
  double transmission_alpha = 1.0;
  double v_g = 0.0;
  TransmissionVariant variant = TransmissionVariant::SqrtRate;

  int cascade_n_max = 20;

  FourLevelParams four_level;
  std::vector<double> four_level_omegas;  // extra drives for the convergence table
  double four_level_t_end = 20.0;

  std::vector<double> ratios;

  std::map<std::string, std::string> resolved;
  std::vector<std::string> defaulted;

  SweepSpec sweep_spec() const;
};

// Command-line overrides, applied as if the keys had been written in the file.
struct ConfigOverrides {
  std::map<std::string, std::string> values;
};

// Parses "key = value" lines; '#' starts a comment. Throws ConfigError on an
// unknown key, a repeated key, a missing required key (naming it) or a value
// that breaks an invariant (quoting the violated invariant).
RunConfig parse_config(const std::string& text, const ConfigOverrides& overrides = {});
RunConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

// Re-loadable text that reproduces the run.
std::string manifest_text(const RunConfig& cfg);

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace xkerr
