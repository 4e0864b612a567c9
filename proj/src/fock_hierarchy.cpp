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

#include "xkerr/fock_hierarchy.hpp"

#include <cmath>
#include <sstream>

#include "xkerr/error.hpp"
#include "xkerr/superop.hpp"

namespace xkerr {

namespace {

Matrix3c block(const HierVec& v, int offset) { return v.segment<9>(offset).reshaped(3, 3); }

}  // namespace

FockHierarchy FockHierarchy::ground() {
  FockHierarchy h;
  h.rho00(0, 0) = 1.0;
  h.rho11(0, 0) = 1.0;
  return h;
}

HierVec FockHierarchy::pack() const {
  HierVec v;
  v.segment<9>(kBlock00) = rho00.reshaped();
  v.segment<9>(kBlock01) = rho01.reshaped();
  v.segment<9>(kBlock10) = rho10.reshaped();
  v.segment<9>(kBlock11) = rho11.reshaped();
  return v;
}

FockHierarchy FockHierarchy::unpack(const HierVec& v) {
  return {block(v, kBlock00), block(v, kBlock01), block(v, kBlock10), block(v, kBlock11)};
}

Superop3 transmon_liouvillian(const SystemParams& p) {
  return liouvillian(hamiltonian(p), {decay_b(p), decay_c(p)});
}

HierarchyModel::HierarchyModel(const SystemParams& p, const PulseShape& pulse, double coupling_scale)
    : HierarchyModel(transmon_liouvillian(p), decay_b(p), pulse) {
  scale_ = coupling_scale;
}

HierarchyModel::HierarchyModel(const Superop3& transmon, const Matrix3c& coupling, const PulseShape& pulse)
    : l0_(transmon), pulse_(pulse) {
  pulse_.validate();
  c1_ = commutator_superop(coupling);
  c2_ = spost(coupling.adjoint()) - spre(coupling.adjoint());
}

void HierarchyModel::rhs(double t, Side side, const HierVec& v, HierVec& out) const {
  const cplx f = scale_ * amplitude(pulse_, t, side);
  const cplx fc = std::conj(f);
  const auto v00 = v.segment<9>(kBlock00);
  const auto v01 = v.segment<9>(kBlock01);
  const auto v10 = v.segment<9>(kBlock10);
  out.segment<9>(kBlock00).noalias() = l0_ * v00;
  out.segment<9>(kBlock01).noalias() = l0_ * v01 + fc * (c1_ * v00);
  out.segment<9>(kBlock10).noalias() = l0_ * v10 + f * (c2_ * v00);
  out.segment<9>(kBlock11).noalias() = l0_ * v.segment<9>(kBlock11) + fc * (c1_ * v10) + f * (c2_ * v01);
}

void HierarchyModel::adjoint_rhs(double t, Side side, const HierRow& g, HierRow& out) const {
  const cplx f = scale_ * amplitude(pulse_, t, side);
  const cplx fc = std::conj(f);
  const auto g01 = g.segment<9>(kBlock01);
  const auto g10 = g.segment<9>(kBlock10);
  const auto g11 = g.segment<9>(kBlock11);
  out.segment<9>(kBlock00).noalias() = g.segment<9>(kBlock00) * l0_ + fc * (g01 * c1_) + f * (g10 * c2_);
  out.segment<9>(kBlock01).noalias() = g01 * l0_ + f * (g11 * c2_);
  out.segment<9>(kBlock10).noalias() = g10 * l0_ + fc * (g11 * c1_);
  out.segment<9>(kBlock11).noalias() = g11 * l0_;
}

void HierarchyModel::step(double t, double dt, HierVec& v) const {
  HierVec k1, k2, k3, k4;
  rhs(t, Side::Right, v, k1);
  rhs(t + 0.5 * dt, Side::Right, v + 0.5 * dt * k1, k2);
  rhs(t + 0.5 * dt, Side::Right, v + 0.5 * dt * k2, k3);
  rhs(t + dt, Side::Left, v + dt * k3, k4);
  v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

HierarchyTrajectory evolve_hierarchy(const HierarchyModel& model, const SystemParams& p, const TimeGrid& grid,
                                     double trace_tolerance) {
  HierarchyTrajectory out;
  out.grid = grid;
  out.states.reserve(grid.n_points());
  out.y.reserve(grid.n_points());
  HierVec v = FockHierarchy::ground().pack();
  for (std::size_t k = 0; k <= grid.n_steps; ++k) {
    FockHierarchy h = FockHierarchy::unpack(v);
    const double drift = std::max(std::abs(h.rho11.trace() - 1.0), std::abs(h.rho00.trace() - 1.0));
    if (!(drift <= trace_tolerance)) {
      std::ostringstream msg;
      msg << "hierarchy trace drifted by " << drift << " at t = " << grid.t(k) << "; reduce dt (currently "
          << grid.dt << ")";
      throw IntegrationError(msg.str(), grid.dt);
    }
    out.y.push_back(polarisation(h.rho11, p));
    out.states.push_back(std::move(h));
    if (k < grid.n_steps) model.step(grid.t(k), grid.dt, v);
  }
  return out;
}

HierarchyTrajectory evolve_hierarchy(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid,
                                     const HierarchyOptions& opts) {
  p.validate();
  const HierarchyModel model(p, pulse, opts.coupling_scale);
  return evolve_hierarchy(model, p, grid, opts.trace_tolerance);
}

double expected_signal(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid) {
  return trapezoid(evolve_hierarchy(p, pulse, grid).y, grid.dt);
}

double trapezoid(const std::vector<double>& f, double dt) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * dt;
}

}  // namespace xkerr
