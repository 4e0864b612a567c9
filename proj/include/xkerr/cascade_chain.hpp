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

namespace xkerr {

enum class TransmissionVariant {
  SqrtRate,  // numerator factor (Delta'_b + i sqrt(gamma_c) / 2)
  Uniform,    // numerator factor (Delta'_b + i gamma_c / 2)
};

// eps_eff = 5.9 in units with c = 1.
double default_group_velocity();

// Probe-transmission amplitude of one transmon in the chain:
// t = [(D'_b + i x)(D'_c + i g_c/2) - g_c alpha^2]
//   / [(D'_b + i g_c/2 + i g_b/v_g)(D'_c + i g_c/2) - g_c alpha^2],
// x = sqrt(g_c)/2 (SqrtRate) or g_c/2 (Uniform).
// Throws std::domain_error when the denominator vanishes.
cplx transmission(double delta_b, double delta_c, double alpha, const SystemParams& p, double v_g,
                  TransmissionVariant variant = TransmissionVariant::SqrtRate);

// Full width at half maximum of |t|^2 around delta = 0 for the scan
// Delta'_b = p.delta_b + delta, Delta'_c = p.delta_c + delta (both shift with the
// signal frequency). Returns 0 when |t|^2 never falls to half its value at
// delta = 0 within |delta| <= span.
double transparency_width(const SystemParams& p, double alpha, double v_g,
                          TransmissionVariant variant = TransmissionVariant::SqrtRate, double span = 50.0,
                          double resolution = 1e-4);

struct CascadeParams {
  int n = 1;
  double alpha = 0.0;
  double v_g = 0.0;
  double T_trans = 1.0;
  double R = 0.0;

  void validate() const;
};

// SNR_1 (sqrt(n) T^{n-1} + sum_{j=1}^{n-1} j / sqrt(n) T^{j-1} R), R = 1 - T.
double snr_cascade(int n, double snr_1, double T_trans);

}  // namespace xkerr
