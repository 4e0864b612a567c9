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

#include <functional>
#include <vector>

namespace xkerr {

struct NelderMeadOptions {
  int max_iterations = 200;
  double f_tolerance = 1e-4;  // stop when f_worst - f_best falls below this
  double x_tolerance = 1e-10;  // or when every vertex sits this close to the best
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

// Minimises f from the axis-aligned simplex {x0, x0 + step_i e_i}. Non-finite
// values are treated as +inf, so the caller can encode bounds by returning NaN
// outside the domain. Ties are resolved by vertex order, so the run is
// deterministic.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const std::vector<double>& step,
                             const NelderMeadOptions& options = {});

}  // namespace xkerr
