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

#include "xkerr/qutrit.hpp"
#include "xkerr/time_grid.hpp"

namespace xkerr {

// N transmons inside one wavelength act as a single emitter with every rate
// and energy scaled by N (probe amplitude by sqrt(N), so Omega_p scales by N).
// Under t -> t / N the N-transmon equations map onto the single-transmon ones
// and <y_N>(t / N) = sqrt(N) <y_1>(t).
struct RescaledParams {
  SystemParams params;
  double time_scale = 1.0;    // multiply times by this (1/N)
  double signal_scale = 1.0;  // <y_N>(t / N) / <y_1>(t) = sqrt(N)
};

RescaledParams ensemble_rescaled_params(const SystemParams& p, int n);

// Same number of steps with dt / N.
TimeGrid rescale_grid(const TimeGrid& grid, int n);

}  // namespace xkerr
