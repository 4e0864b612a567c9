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

#include "xkerr/qutrit.hpp"
#include "xkerr/time_grid.hpp"

namespace xkerr {

// N-type four-level system |0>..|3>: signal beta on 0-1, strong drive Omega on
// 1-2, probe alpha on 2-3; decays 1 -> 0, 2 -> 1, 3 -> 2.
struct FourLevelParams {
  double omega_drive = 10.0;
  double delta_12 = 0.0;
  double delta_10 = -5.0;
  double delta_32 = -5.0;
  double gamma_01 = 1.0;
  double gamma_12 = 1.0;
  double gamma_32 = 1.0;
  double alpha = 1.0;
  double beta_sig = 1.0;

  double theta_mix() const;  // atan2(Omega, Delta_12) / 2
  double lambda_plus() const;
  double lambda_minus() const;
  void validate() const;

  // Detunings set to the resonance Delta_10 = Delta_32 = lambda_-.
  static FourLevelParams resonant(double omega_drive, double delta_12 = 0.0);
};

// Ladder {|0>, |->, |3>} in the roles {a, b, c}.
struct ReducedLadder {
  SystemParams effective;  // gamma_b = gamma_01, gamma_c = gamma_32, beta = sin(theta) alpha
  double signal_coupling = 0.0;  // cos(theta) sqrt(gamma_01) beta_sig
  double probe_coupling = 0.0;   // sin(theta) sqrt(gamma_32) alpha
  double theta = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};

// Throws std::invalid_argument when the resonance conditions do not hold and
// std::domain_error when Omega = Delta_12 = 0.
ReducedLadder four_level_reduce(const FourLevelParams& p4);

Operator four_level_hamiltonian(const FourLevelParams& p4);
std::vector<Operator> four_level_jumps(const FourLevelParams& p4);

struct PopulationComparison {
  std::vector<double> t;
  std::vector<double> pop4;  // |3><3| in the four-level model
  std::vector<double> pop3;  // |c><c| in the reduced ladder
  double sup_norm = 0.0;
  double max_trace_error = 0.0;  // four-level model
};

// Both models start in the ground state; the signal is a coherent drive.
PopulationComparison compare_four_level(const FourLevelParams& p4, const TimeGrid& grid);

}  // namespace xkerr
