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

#include <complex>

namespace xkerr {

// Squeezed-vacuum probe: N = sinh^2 r, M = sinh r cosh r e^{i theta},
// L = 1 + 2N + M + M* = cosh 2r + sinh 2r cos theta.
struct SqueezeParams {
  double r = 0.0;
  double theta = 0.0;

  double N() const;
  std::complex<double> M() const;
  double L() const;
  void validate() const;

  // Phase in {0, pi} that minimises L (pi for r > 0).
  static SqueezeParams noise_reducing(double r);
};

// 10 log10(e^{2r}).
double squeezing_db(double r);

}  // namespace xkerr
