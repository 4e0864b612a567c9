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

#include <Eigen/Dense>

#include "xkerr/pulse.hpp"
#include "xkerr/qutrit.hpp"
#include "xkerr/time_grid.hpp"

namespace xkerr {

using Superop3 = Eigen::Matrix<cplx, 9, 9>;
using HierVec = Eigen::Matrix<cplx, 36, 1>;
using HierRow = Eigen::Matrix<cplx, 1, 36>;

// Transmon blocks rho_mn for m, n in {0, 1}. The diagonal blocks are unit-trace
// states; rho01 and rho10 are traceless coherences.
struct FockHierarchy {
  Matrix3c rho00 = Matrix3c::Zero();
  Matrix3c rho01 = Matrix3c::Zero();
  Matrix3c rho10 = Matrix3c::Zero();
  Matrix3c rho11 = Matrix3c::Zero();

  static FockHierarchy ground();
  HierVec pack() const;
  static FockHierarchy unpack(const HierVec& v);
};

// Block order inside a packed HierVec: 00, 01, 10, 11.
inline constexpr int kBlock00 = 0;
inline constexpr int kBlock01 = 9;
inline constexpr int kBlock10 = 18;
inline constexpr int kBlock11 = 27;

Superop3 transmon_liouvillian(const SystemParams& p);

// Linear generator M(t) of the one-photon hierarchy,
//   d rho_mn = L0 rho_mn + sqrt(n) f* [L_b, rho_m,n-1] + sqrt(m) f [rho_m-1,n, L_b^dag].
class HierarchyModel {
 public:
  HierarchyModel(const SystemParams& p, const PulseShape& pulse, double coupling_scale = 1.0);
  HierarchyModel(const Superop3& transmon, const Matrix3c& coupling, const PulseShape& pulse);

  void rhs(double t, Side side, const HierVec& v, HierVec& out) const;
  // out = g M(t), for backward sweeps of linear functionals.
  void adjoint_rhs(double t, Side side, const HierRow& g, HierRow& out) const;

  // One classical RK4 step on [t, t + dt].
  void step(double t, double dt, HierVec& v) const;

  const PulseShape& pulse() const { return pulse_; }
  const Superop3& transmon() const { return l0_; }

 private:
  Superop3 l0_;
  Superop3 c1_;  // X -> [L_b, X]
  Superop3 c2_;  // X -> [X, L_b^dag]
  PulseShape pulse_;
  double scale_ = 1.0;
};

struct HierarchyTrajectory {
  TimeGrid grid;
  std::vector<FockHierarchy> states;
  std::vector<double> y;  // <y>(t_k) from rho11
};

struct HierarchyOptions {
  // Multiplies f(t); zero gives the photon-free limit.
  double coupling_scale = 1.0;
  // Abort when |Tr rho_nn - 1| exceeds this.
  double trace_tolerance = 1e-6;
};

HierarchyTrajectory evolve_hierarchy(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid,
                                     const HierarchyOptions& opts = {});
HierarchyTrajectory evolve_hierarchy(const HierarchyModel& model, const SystemParams& p, const TimeGrid& grid,
                                     double trace_tolerance = 1e-6);

// Trapezoid integral of <y> over the grid.
double expected_signal(const SystemParams& p, const PulseShape& pulse, const TimeGrid& grid);

double trapezoid(const std::vector<double>& f, double dt);

}  // namespace xkerr
