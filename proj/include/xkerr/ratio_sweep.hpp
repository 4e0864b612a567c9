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

#include <vector>

#include "xkerr/sweep.hpp"

namespace xkerr {

struct RatioPoint {
  double ratio = 0.0;  // gamma_c / gamma_b
  double beta_opt = 0.0;
  double snr_opt = 0.0;
  SnrResult result;
};

// For each ratio sets gamma_c = ratio gamma_b and optimises the SNR over the
// spec's axes (normally beta alone). Ratios must lie in [1, 100].
std::vector<RatioPoint> ratio_sweep(const std::vector<double>& ratios, const SweepSpec& spec);

}  // namespace xkerr
