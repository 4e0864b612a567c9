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

#include "xkerr/rescaling.hpp"

#include <cmath>
#include <stdexcept>

namespace xkerr {

RescaledParams ensemble_rescaled_params(const SystemParams& p, int n) {
  if (n < 1) throw std::invalid_argument("ensemble size must be at least 1");
  p.validate();
  const double s = static_cast<double>(n);
  RescaledParams out;
  out.params = p;
  if (n == 1) return out;
  out.params.gamma_b = s * p.gamma_b;
  out.params.gamma_c = s * p.gamma_c;
  out.params.gamma_con = s * p.gamma_con;
  out.params.delta_b = s * p.delta_b;
  out.params.delta_c = s * p.delta_c;
  out.params.beta = std::sqrt(s) * p.beta;
  out.time_scale = 1.0 / s;
  out.signal_scale = std::sqrt(s);
  return out;
}

TimeGrid rescale_grid(const TimeGrid& grid, int n) {
  if (n < 1) throw std::invalid_argument("ensemble size must be at least 1");
  return TimeGrid(grid.dt / static_cast<double>(n), grid.n_steps);
}

}  // namespace xkerr
