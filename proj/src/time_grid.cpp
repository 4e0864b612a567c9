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

#include "xkerr/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace xkerr {

TimeGrid::TimeGrid(double dt_, std::size_t n_steps_) : dt(dt_), n_steps(n_steps_) {
  if (!(std::isfinite(dt) && dt > 0.0)) throw std::invalid_argument("time step must be positive");
}

TimeGrid TimeGrid::covering(double t_min, double dt) {
  if (!(std::isfinite(dt) && dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(std::isfinite(t_min) && t_min >= 0.0)) throw std::invalid_argument("grid horizon must be non-negative");
  const double steps = std::ceil(t_min / dt - 1e-9);
  return TimeGrid(dt, static_cast<std::size_t>(std::max(steps, 1.0)));
}

TimeGrid default_grid(const PulseShape& pulse, double gamma_b, double dt_max, double ring_down) {
  pulse.validate();
  if (!(gamma_b > 0.0)) throw std::invalid_argument("gamma_b must be positive");
  double dt = dt_max;
  if (pulse.kind == PulseKind::Rectangular) {
    dt = pulse.width / std::ceil(pulse.width / dt_max - 1e-9);
    if (pulse.t_offset > 0.0) {
      // Shrink further until the start edge is also a grid point, if the
      // offset is a rational multiple of the width within reach.
      for (int m = 1; m <= 64; ++m) {
        const double cand = dt / m;
        const double k = pulse.t_offset / cand;
        if (std::abs(k - std::round(k)) < 1e-9 * std::max(1.0, k)) {
          dt = cand;
          break;
        }
      }
    }
  }
  const double t_min = capture_horizon(pulse, std::exp(-10.0)) + ring_down / gamma_b;
  return TimeGrid::covering(t_min, dt);
}

}  // namespace xkerr
