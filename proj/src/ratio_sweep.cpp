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

#include "xkerr/ratio_sweep.hpp"

#include <stdexcept>

namespace xkerr {

std::vector<RatioPoint> ratio_sweep(const std::vector<double>& ratios, const SweepSpec& spec) {
  for (double r : ratios)
    if (!(r >= 1.0 && r <= 100.0)) throw std::invalid_argument("gamma_c / gamma_b ratios must lie in [1, 100]");
  for (const AxisGrid& g : spec.axes)
    if (g.axis == SweepAxis::GammaC) throw std::invalid_argument("ratio sweep fixes gamma_c itself");

  std::vector<RatioPoint> out;
  for (double r : ratios) {
    SweepSpec s = spec;
    s.fixed.gamma_c = r * spec.fixed.gamma_b;
    const OptimizeResult opt = optimize(s);
    RatioPoint pt;
    pt.ratio = r;
    pt.beta_opt = opt.best.params.beta;
    pt.snr_opt = opt.best.result->snr;
    pt.result = *opt.best.result;
    out.push_back(pt);
  }
  return out;
}

}  // namespace xkerr
