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

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "xkerr/qutrit.hpp"
#include "xkerr/time_grid.hpp"

namespace xkerr {

// Closed-form solution of the one-photon hierarchy for an exponential pulse on
// resonance with gamma_c = 2 gamma_b (g = gamma_b, Omega = sqrt(2g) beta,
// kappa = gamma_con / 2).
//
// Coherence block, with u = a4_01 and w = a7_01 (a5_01 = -i u, a6_01 = i w):
//   u(t) = C1 (C2 e^{-th1 t} + C3 e^{-th2 t} + C4 e^{-kappa t})
//   w(t) = C1 (C5 e^{-th1 t} + C6 e^{-th2 t} - C7 e^{-kappa t})
// theta = sqrt(g - 32 beta^2), th1,2 = 3g/4 +- sqrt(g) theta / 4,
// C1 = sqrt(g gamma_con) / (theta D), D = 2g(4 beta^2 + g) - 3 g gamma_con + gamma_con^2,
// C2 = 2 sqrt(g)(8 beta^2 - g + sqrt(g) theta) + gamma_con (sqrt(g) - theta),
// C3 = 2 sqrt(g)(-8 beta^2 + g + sqrt(g) theta) - gamma_con (sqrt(g) + theta),
// C4 = 2 theta (gamma_con - 2g),
// C5 = 2 sqrt(2) beta (-3g + 2 gamma_con + sqrt(g) theta),
// C6 = 2 sqrt(2) beta (3g - 2 gamma_con + sqrt(g) theta),
// C7 = 4 sqrt(2g) beta theta.
struct AnalyticCoeffs {
  cplx theta;
  cplx theta1;
  cplx theta2;
  std::array<cplx, 7> c{};  // c[0] = C1 ... c[6] = C7
  double kappa = 0.0;
  bool degenerate = false;  // theta ~ 0 or D ~ 0: closed form not evaluable
};

// Throws UnsupportedRegime off resonance, for gamma_c != 2 gamma_b or for the
// sqrt(gamma_con) probe convention.
AnalyticCoeffs coeffs(const SystemParams& p);

struct Rho01Coefficients {
  cplx a401;
  cplx a501;
  cplx a601;
  cplx a701;
};

Rho01Coefficients rho01_coefficients(const SystemParams& p, double t);

// Populations/polarisation of rho11 in the Gell-Mann layer, x = (a2, a3, a8):
// dx/dt = A x + B(t),
//   A = [[-3g/2, -2 sqrt(2g) beta, 0],
//        [2 sqrt(2g) beta, -5g/2, sqrt(3) g / 2],
//        [0, -sqrt(3) g / 2, -g/2]],
//   B = (2 sqrt(g) f w, g - 2 sqrt(g) f u, -g/sqrt(3) - 2 sqrt(3 g) f u),
// with f = sqrt(gamma_con) e^{-kappa t}.
struct BlochSystem {
  Eigen::Matrix3d A;
  Eigen::Vector3d b_inf;  // B at t -> inf
  Eigen::Vector3d x0;
  SystemParams params;

  Eigen::Vector3d drive(double t) const;
};

BlochSystem bloch_system(const SystemParams& p);

struct Rho11Solution {
  std::vector<Eigen::Vector3d> x;
  std::vector<double> y;  // sqrt(gamma_c) a2
  bool used_fallback = false;
};

// Eigendecomposition of A with closed-form exponential integrals. Falls back
// to exact matrix-exponential propagation of the augmented linear system when
// A is close to defective or the coherence constants are singular.
Rho11Solution solve_rho11(const SystemParams& p, const TimeGrid& grid);

// Same quantity by propagation of the augmented system only.
Rho11Solution solve_rho11_propagated(const SystemParams& p, const TimeGrid& grid);

}  // namespace xkerr
