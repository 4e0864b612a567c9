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

#include "xkerr/fock_hierarchy.hpp"

namespace xkerr {

// Mean and variance of S = int_0^T J dt for J = <y> + sqrt(noise) xi. The
// two-time correlation is E[J(t') J(t)] = noise delta(t'-t) + Tr[y Phi(t',t) X(t)]
// with X = jump(rho(t)) applied to every hierarchy block and Phi the hierarchy
// propagator. The double integral is evaluated with one backward adjoint
// sweep G(t) = int_t^T ell Phi(t', t) dt'.
struct SignalStatistics {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  std::vector<double> y;
};

struct RegressionProblem {
  const HierarchyModel* model = nullptr;
  Matrix3c observable;  // y
  Superop3 jump;        // X -> sqrt(noise) (c X + X c^dag)
  double noise_factor = 1.0;
};

// Measured operator c = e^{i phase} L_c; the record is <c + c^dag> + xi, which
// is <y> at the default phase.
Matrix3c homodyne_operator(const SystemParams& p, double lo_phase);
// X -> c X + X c^dag.
Superop3 homodyne_jump(const SystemParams& p, double lo_phase);

inline constexpr double kDefaultLoPhase = -1.5707963267948966;

// n_photon selects the physical diagonal block (0 -> rho00, 1 -> rho11).
SignalStatistics signal_statistics(const RegressionProblem& problem, const TimeGrid& grid, int n_photon);

// Var[S_1] for the plain homodyne record.
double variance_regression(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid,
                           double lo_phase = kDefaultLoPhase);

SignalStatistics signal_statistics(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid,
                                   int n_photon, double lo_phase = kDefaultLoPhase);

}  // namespace xkerr
