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
#include <optional>
#include <string>
#include <vector>

#include "xkerr/pulse.hpp"
#include "xkerr/qutrit.hpp"
#include "xkerr/regression.hpp"
#include "xkerr/snr.hpp"
#include "xkerr/time_grid.hpp"

namespace xkerr {

enum class SweepAxis { Beta, DeltaB, DeltaC, GammaCon, GammaC };

const char* sweep_axis_name(SweepAxis axis);
SweepAxis sweep_axis_from_name(const std::string& name);
void set_axis(SystemParams& p, SweepAxis axis, double value);
double get_axis(const SystemParams& p, SweepAxis axis);

enum class Optimizer { GridOnly, GridThenSimplex };

struct AxisGrid {
  SweepAxis axis = SweepAxis::Beta;
  std::vector<double> values;
};

struct SweepSpec {
  std::vector<AxisGrid> axes;  // first axis varies slowest
  SystemParams fixed;
  PulseKind pulse = PulseKind::Exponential;
  SnrMethod method = SnrMethod::RegressionAnalytic;
  Optimizer optimizer = Optimizer::GridThenSimplex;
  double dt = kDefaultDt;
  double ring_down = kDefaultRingDown;
  double lo_phase = kDefaultLoPhase;
  std::size_t n_traj = 5000;     // StochasticEnsemble only
  std::uint64_t base_seed = 0;  // n = 1 uses base_seed + k, n = 0 base_seed + n_traj + k
  unsigned threads = 0;

  void validate() const;
};

// The pulse follows gamma_con of the point; the grid is default_grid for it.
SnrResult evaluate_point(const SweepSpec& spec, const SystemParams& p);

struct SweepPoint {
  std::vector<double> coords;
  SystemParams params;
  std::optional<SnrResult> result;
  std::string error;  // set when the point failed
};

// Row-major over the axes. Failing points keep their error and the sweep goes on.
std::vector<SweepPoint> sweep(const SweepSpec& spec);

// Largest SNR; equal values resolve to the lexicographically smallest coords.
// Returns nullptr when no point succeeded.
const SweepPoint* best_point(const std::vector<SweepPoint>& table);

struct OptimizeResult {
  std::vector<SweepPoint> table;
  SweepPoint grid_best;
  SweepPoint best;
  int iterations = 0;
  int evaluations = 0;
  bool refined = false;  // simplex improved on the grid point
};

// Grid search, then Nelder-Mead inside the grid's bounding box from the best
// grid point with the grid spacing as initial step. Refuses stochastic methods.
OptimizeResult optimize(const SweepSpec& spec);

// start, start + step, ... up to stop (inclusive within step / 1e6).
std::vector<double> linspace_step(double start, double stop, double step);

}  // namespace xkerr
