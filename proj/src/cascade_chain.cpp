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

#include "xkerr/cascade_chain.hpp"

#include <cmath>
#include <stdexcept>

namespace xkerr {

double default_group_velocity() { return 1.0 / std::sqrt(5.9); }

cplx transmission(double delta_b, double delta_c, double alpha, const SystemParams& p, double v_g,
                  TransmissionVariant variant) {
  if (!(v_g > 0.0)) throw std::invalid_argument("group velocity must be positive");
  const cplx i(0.0, 1.0);
  const double gc = p.gamma_c;
  const double x = variant == TransmissionVariant::SqrtRate ? 0.5 * std::sqrt(gc) : 0.5 * gc;
  const cplx dc = delta_c + i * (0.5 * gc);
  const double coupling = gc * alpha * alpha;
  const cplx num = (delta_b + i * x) * dc - coupling;
  const cplx den = (delta_b + i * (0.5 * gc + p.gamma_b / v_g)) * dc - coupling;
  if (std::abs(den) < 1e-300) throw std::domain_error("transmission: singular denominator");
  return num / den;
}

double transparency_width(const SystemParams& p, double alpha, double v_g, TransmissionVariant variant, double span,
                          double resolution) {
  auto t2 = [&](double d) { return std::norm(transmission(p.delta_b + d, p.delta_c + d, alpha, p, v_g, variant)); };
  const double half = 0.5 * t2(0.0);
  auto edge = [&](double sign) {
    for (double d = resolution; d <= span; d += resolution)
      if (t2(sign * d) < half) return d;
    return -1.0;
  };
  const double right = edge(1.0);
  const double left = edge(-1.0);
  if (right < 0.0 || left < 0.0) return 0.0;
  return right + left;
}

void CascadeParams::validate() const {
  if (n < 1) throw std::invalid_argument("cascade needs at least one transmon");
  if (!(T_trans >= 0.0 && T_trans <= 1.0)) throw std::invalid_argument("transmission probability outside [0, 1]");
  if (std::abs(R - (1.0 - T_trans)) > 1e-12) throw std::invalid_argument("R must equal 1 - T");
}

double snr_cascade(int n, double snr_1, double T_trans) {
  CascadeParams c{n, 0.0, 0.0, T_trans, 1.0 - T_trans};
  c.validate();
  const double rn = std::sqrt(static_cast<double>(n));
  double sum = rn * std::pow(T_trans, n - 1);
  for (int j = 1; j < n; ++j) sum += j / rn * std::pow(T_trans, j - 1) * c.R;
  return snr_1 * sum;
}

}  // namespace xkerr
