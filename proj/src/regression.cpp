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

#include "xkerr/regression.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "xkerr/error.hpp"
#include "xkerr/superop.hpp"

namespace xkerr {

Matrix3c homodyne_operator(const SystemParams& p, double lo_phase) {
  return std::polar(1.0, lo_phase) * decay_c(p);
}

Superop3 homodyne_jump(const SystemParams& p, double lo_phase) {
  const Matrix3c c = homodyne_operator(p, lo_phase);
  return spre(c) + spost(c.adjoint());
}

SignalStatistics signal_statistics(const RegressionProblem& problem, const TimeGrid& grid, int n_photon) {
  if (problem.model == nullptr) throw std::invalid_argument("regression problem has no model");
  if (n_photon != 0 && n_photon != 1) throw std::invalid_argument("n_photon must be 0 or 1");
  const HierarchyModel& model = *problem.model;
  const int phys = n_photon == 1 ? kBlock11 : kBlock00;
  const std::size_t n = grid.n_steps;
  const double dt = grid.dt;

  // Forward sweep: hierarchy states and <y>.
  std::vector<HierVec> states;
  states.reserve(n + 1);
  SignalStatistics out;
  out.y.reserve(n + 1);
  HierVec v = FockHierarchy::ground().pack();
  for (std::size_t k = 0; k <= n; ++k) {
    const Matrix3c rho = v.segment<9>(phys).reshaped(3, 3);
    const cplx ey = (problem.observable * rho).trace();
    if (std::abs(ey.imag()) > 1e-10) throw NumericalError("regression: complex expectation value");
    out.y.push_back(ey.real());
    states.push_back(v);
    if (k < n) model.step(grid.t(k), dt, v);
  }
  out.mean = trapezoid(out.y, dt);

  // ell(X) = Tr[y X_phys] = sum_ij y_ji X_ij.
  HierRow ell = HierRow::Zero();
  ell.segment<9>(phys) = problem.observable.transpose().reshaped().transpose();

  auto adj = [&](double t, Side side, const HierRow& g, HierRow& o) {
    model.adjoint_rhs(t, side, g, o);
    o = -ell - o;
  };
  auto kernel = [&](const HierRow& g, const HierVec& s) {
    double acc = 0.0;
    for (int b = 0; b < 4; ++b) {
      const auto x = (problem.jump * s.segment<9>(9 * b)).eval();
      acc += (g.segment<9>(9 * b) * x).value().real();
    }
    return acc;
  };

  HierRow g = HierRow::Zero();
  std::vector<double> gk(n + 1, 0.0);
  HierRow k1, k2, k3, k4;
  for (std::size_t k = n + 1; k-- > 0;) {
    gk[k] = kernel(g, states[k]);
    if (k == 0) break;
    const double t = grid.t(k);
    const double h = -dt;
    adj(t, Side::Left, g, k1);
    adj(t + 0.5 * h, Side::Right, g + 0.5 * h * k1, k2);
    adj(t + 0.5 * h, Side::Right, g + 0.5 * h * k2, k3);
    adj(t + h, Side::Right, g + h * k3, k4);
    g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  out.second_moment = problem.noise_factor * grid.T() + 2.0 * trapezoid(gk, dt);
  out.variance = out.second_moment - out.mean * out.mean;
  if (out.variance < -1e-6) {
    std::ostringstream msg;
    msg << "regression variance is negative (" << out.variance << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

SignalStatistics signal_statistics(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid,
                                   int n_photon, double lo_phase) {
  p.validate();
  const HierarchyModel model(p, pulse);
  RegressionProblem problem;
  problem.model = &model;
  const Matrix3c c = homodyne_operator(p, lo_phase);
  problem.observable = c + c.adjoint();
  problem.jump = homodyne_jump(p, lo_phase);
  problem.noise_factor = 1.0;
  return signal_statistics(problem, grid, n_photon);
}

double variance_regression(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid, double lo_phase) {
  return signal_statistics(p, pulse, grid, 1, lo_phase).variance;
}

}  // namespace xkerr
