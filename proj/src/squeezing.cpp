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

#include "xkerr/squeezing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "xkerr/superop.hpp"

namespace xkerr {

double SqueezeParams::N() const {
  const double s = std::sinh(r);
  return s * s;
}

std::complex<double> SqueezeParams::M() const { return std::sinh(r) * std::cosh(r) * std::polar(1.0, theta); }

double SqueezeParams::L() const { return 1.0 + 2.0 * N() + 2.0 * M().real(); }

void SqueezeParams::validate() const {
  if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("squeezing r must be non-negative");
  if (!std::isfinite(theta)) throw std::invalid_argument("squeezing phase must be finite");
}

SqueezeParams SqueezeParams::noise_reducing(double r) {
  SqueezeParams a{r, 0.0};
  SqueezeParams b{r, std::numbers::pi};
  return b.L() < a.L() ? b : a;
}

double squeezing_db(double r) { return 10.0 * std::log10(std::exp(2.0 * r)); }

Matrix3c squeezed_bath_operator(const SystemParams& p, const SqueezeParams& sq) {
  sq.validate();
  return std::sqrt(p.gamma_c) * (std::cosh(sq.r) * sigma(Level::b, Level::c, 3) +
                                 (std::sinh(sq.r) * std::polar(1.0, -sq.theta)) * sigma(Level::c, Level::b, 3));
}

Superop3 squeezed_transmon_liouvillian(const SystemParams& p, const SqueezeParams& sq) {
  return liouvillian(hamiltonian(p), {decay_b(p), squeezed_bath_operator(p, sq)});
}

Matrix3c squeezed_measurement_operator(const SystemParams& p, const SqueezeParams& sq, double lo_phase) {
  const double n = sq.N();
  const cplx m = sq.M();
  const double k = std::sqrt(p.gamma_c / sq.L());
  return k * ((n + 1.0 + m) * std::polar(1.0, lo_phase)) * sigma(Level::b, Level::c, 3) -
         k * ((n + std::conj(m)) * std::polar(1.0, -lo_phase)) * sigma(Level::c, Level::b, 3);
}

JointState squeezed_sme_step(const JointState& rho, double dW, double dt, const SystemParams& p,
                             const SqueezeParams& sq) {
  return sme_step(rho, dW, dt, CascadedModel(p, sq));
}

SignalStatistics squeezed_signal_statistics(const SystemParams& p, const SqueezeParams& sq,
                                            const PulseShape& pulse, const TimeGrid& grid, int n_photon,
                                            double lo_phase) {
  p.validate();
  const HierarchyModel model(squeezed_transmon_liouvillian(p, sq), decay_b(p), pulse);
  const Matrix3c c = squeezed_measurement_operator(p, sq, lo_phase);
  const double root_l = std::sqrt(sq.L());
  RegressionProblem problem;
  problem.model = &model;
  problem.observable = root_l * (c + c.adjoint());
  problem.jump = root_l * (spre(c) + spost(c.adjoint()));
  problem.noise_factor = sq.L();
  return signal_statistics(problem, grid, n_photon);
}

}  // namespace xkerr
