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

#include "xkerr/pulse.hpp"

namespace xkerr {

// Uniform grid t_k = k dt, k = 0..n_steps, starting at t = 0.
struct TimeGrid {
  double dt = 1e-3;
  std::size_t n_steps = 0;

  TimeGrid() = default;
  TimeGrid(double dt, std::size_t n_steps);

  double T() const { return dt * static_cast<double>(n_steps); }
  double t(std::size_t k) const { return dt * static_cast<double>(k); }
  std::size_t n_points() const { return n_steps + 1; }

  // Smallest grid with step dt reaching at least t_min.
  static TimeGrid covering(double t_min, double dt);
};

inline constexpr double kDefaultDt = 1e-3;
inline constexpr double kDefaultRingDown = 5.0;

// Capture horizon at epsilon = e^-10 plus ring_down / gamma_b. For the
// rectangle the step is shrunk so both edges sit on grid points.
TimeGrid default_grid(const PulseShape& pulse, double gamma_b, double dt_max = kDefaultDt,
                      double ring_down = kDefaultRingDown);

}  // namespace xkerr
