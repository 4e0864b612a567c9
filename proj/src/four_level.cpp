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

#include "xkerr/four_level.hpp"

#include <cmath>
#include <stdexcept>

#include "xkerr/superop.hpp"

namespace xkerr {

namespace {

Operator unit(int i, int j, int dim) {
  Operator m = Operator::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

double FourLevelParams::theta_mix() const { return 0.5 * std::atan2(omega_drive, delta_12); }

double FourLevelParams::lambda_plus() const {
  return 0.5 * delta_12 + 0.5 * std::hypot(delta_12, omega_drive);
}

double FourLevelParams::lambda_minus() const {
  return 0.5 * delta_12 - 0.5 * std::hypot(delta_12, omega_drive);
}

void FourLevelParams::validate() const {
  for (double v : {omega_drive, delta_12, delta_10, delta_32, gamma_01, gamma_12, gamma_32, alpha, beta_sig}) {
    if (!std::isfinite(v)) throw std::invalid_argument("four-level parameters must be finite");
  }
  if (!(gamma_01 > 0.0 && gamma_12 > 0.0 && gamma_32 > 0.0)) {
    throw std::invalid_argument("four-level decay rates must be positive");
  }
  if (alpha < 0.0 || beta_sig < 0.0) throw std::invalid_argument("field amplitudes must be non-negative");
}

FourLevelParams FourLevelParams::resonant(double omega_drive, double delta_12) {
  FourLevelParams p;
  p.omega_drive = omega_drive;
  p.delta_12 = delta_12;
  p.delta_10 = p.lambda_minus();
  p.delta_32 = p.lambda_minus();
  return p;
}

ReducedLadder four_level_reduce(const FourLevelParams& p4) {
  p4.validate();
  if (p4.omega_drive == 0.0 && p4.delta_12 == 0.0) throw std::domain_error("degenerate dressing: Omega = Delta_12 = 0");
  const double lm = p4.lambda_minus();
  const double tol = 1e-9 * std::max(1.0, std::abs(lm));
  if (std::abs(p4.delta_10 - lm) > tol || std::abs(p4.delta_32 - lm) > tol) {
    throw std::invalid_argument("four_level_reduce requires Delta_10 = Delta_32 = lambda_-");
  }
  ReducedLadder r;
  r.theta = p4.theta_mix();
  r.lambda_plus = p4.lambda_plus();
  r.lambda_minus = lm;
  r.signal_coupling = std::cos(r.theta) * std::sqrt(p4.gamma_01) * p4.beta_sig;
  r.probe_coupling = std::sin(r.theta) * std::sqrt(p4.gamma_32) * p4.alpha;
  r.effective.gamma_b = p4.gamma_01;
  r.effective.gamma_c = p4.gamma_32;
  r.effective.gamma_con = p4.gamma_01;
  r.effective.delta_b = 0.0;
  r.effective.delta_c = 0.0;
  r.effective.beta = std::sin(r.theta) * p4.alpha;
  r.effective.omega_p_convention = OmegaConvention::SqrtGammaC;
  return r;
}

Operator four_level_hamiltonian(const FourLevelParams& p4) {
  Operator h = (p4.delta_10 - p4.delta_12) * unit(0, 0, 4) + p4.delta_12 * unit(1, 1, 4) +
               p4.delta_32 * unit(3, 3, 4);
  h += std::sqrt(p4.gamma_01) * p4.beta_sig * (unit(1, 0, 4) + unit(0, 1, 4));
  h += 0.5 * p4.omega_drive * (unit(1, 2, 4) + unit(2, 1, 4));
  h += std::sqrt(p4.gamma_32) * p4.alpha * (unit(2, 3, 4) + unit(3, 2, 4));
  return h;
}

std::vector<Operator> four_level_jumps(const FourLevelParams& p4) {
  return {std::sqrt(p4.gamma_01) * unit(0, 1, 4), std::sqrt(p4.gamma_12) * unit(1, 2, 4),
          std::sqrt(p4.gamma_32) * unit(2, 3, 4)};
}

PopulationComparison compare_four_level(const FourLevelParams& p4, const TimeGrid& grid) {
  const ReducedLadder red = four_level_reduce(p4);
  const LindbladSolver full(four_level_hamiltonian(p4), four_level_jumps(p4));

  const SystemParams& e = red.effective;
  Operator h3 = hamiltonian(e);
  h3 += red.signal_coupling * (sigma(Level::b, Level::a, 3) + sigma(Level::a, Level::b, 3));
  const LindbladSolver ladder(h3, {decay_b(e), decay_c(e)});

  DensityMatrix r4 = unit(0, 0, 4);
  DensityMatrix r3 = sigma(Level::a, Level::a, 3);
  PopulationComparison out;
  out.t.reserve(grid.n_points());
  out.pop4.reserve(grid.n_points());
  out.pop3.reserve(grid.n_points());
  for (std::size_t k = 0; k <= grid.n_steps; ++k) {
    out.t.push_back(grid.t(k));
    out.pop4.push_back(r4(3, 3).real());
    out.pop3.push_back(r3(2, 2).real());
    out.sup_norm = std::max(out.sup_norm, std::abs(out.pop4.back() - out.pop3.back()));
    out.max_trace_error = std::max(out.max_trace_error, std::abs(r4.trace() - 1.0));
    if (k < grid.n_steps) {
      full.step(r4, grid.dt);
      ladder.step(r3, grid.dt);
    }
  }
  return out;
}

}  // namespace xkerr
