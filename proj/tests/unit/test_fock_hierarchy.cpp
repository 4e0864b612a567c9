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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "xkerr/acceptance.hpp"
#include "xkerr/cascaded.hpp"
#include "xkerr/fock_hierarchy.hpp"

using namespace xkerr;

namespace {

Matrix3c ground() {
  Matrix3c g = Matrix3c::Zero();
  g(0, 0) = 1.0;
  return g;
}

SystemParams fig_params() {
  SystemParams p;
  p.gamma_con = 0.6672;
  p.beta = 0.4;
  return p;
}

struct Case {
  const char* name;
  SystemParams p;
  PulseShape pulse;
};

std::vector<Case> cases() {
  std::vector<Case> out;
  SystemParams p = fig_params();
  out.push_back({"exponential", p, PulseShape::exponential(p.gamma_con)});
  p.beta = 0.47;
  out.push_back({"rectangular", p, PulseShape::rectangular(p.gamma_con)});
  p.beta = 0.59;
  out.push_back({"gaussian", p, PulseShape::gaussian(p.gamma_con)});
  p = fig_params();
  p.delta_b = 0.8;
  p.delta_c = -1.1;
  p.beta = 1.2;
  out.push_back({"detuned strong probe", p, PulseShape::exponential(p.gamma_con)});
  p = fig_params();
  p.gamma_c = 30.0;
  p.gamma_con = 2.0;
  out.push_back({"fast probe decay", p, PulseShape::exponential(p.gamma_con)});
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b, std::size_t stride_b = 1) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k * stride_b]));
  return m;
}

}  // namespace

TEST_CASE("photon-free limit keeps the ground state") {
  const SystemParams p = fig_params();
  const PulseShape pulse = PulseShape::exponential(p.gamma_con);
  const TimeGrid grid = TimeGrid::covering(10.0, 1e-2);
  HierarchyOptions opts;
  opts.coupling_scale = 0.0;
  const HierarchyTrajectory tr = evolve_hierarchy(p, pulse, grid, opts);
  for (std::size_t k = 0; k < grid.n_points(); ++k) {
    CHECK(tr.y[k] == 0.0);
    CHECK((tr.states[k].rho11 - ground()).norm() == 0.0);
  }
  CHECK(trapezoid(tr.y, grid.dt) == 0.0);
}

TEST_CASE("rho00 stays at its initial value") {
  for (const Case& c : cases()) {
    const HierarchyTrajectory tr = evolve_hierarchy(c.p, c.pulse, TimeGrid::covering(15.0, 1e-2));
    double worst = 0.0;
    for (const FockHierarchy& s : tr.states) worst = std::max(worst, (s.rho00 - ground()).norm());
    CAPTURE(c.name);
    CHECK(worst == 0.0);
  }
}

TEST_CASE("trace, Hermiticity and positivity along the run") {
  for (const Case& c : cases()) {
    const HierarchyTrajectory tr = evolve_hierarchy(c.p, c.pulse, default_grid(c.pulse, c.p.gamma_b));
    double tr11 = 0, tr01 = 0, herm = 0, herm11 = 0, min_eig = 1, bound = 0;
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
      const FockHierarchy& s = tr.states[k];
      tr11 = std::max(tr11, std::abs(s.rho11.trace() - 1.0));
      tr01 = std::max(tr01, std::abs(s.rho01.trace()));
      herm = std::max(herm, (s.rho10 - s.rho01.adjoint()).cwiseAbs().maxCoeff());
      herm11 = std::max(herm11, (s.rho11 - s.rho11.adjoint()).cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Matrix3c> es(s.rho11, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
      bound = std::max(bound, std::abs(tr.y[k]));
    }
    CAPTURE(c.name);
    CHECK(tr11 < 1e-8);
    CHECK(tr01 < 1e-10);
    CHECK(herm < 1e-10);
    CHECK(herm11 < 1e-10);
    CHECK(min_eig > -1e-8);
    CHECK(bound <= std::sqrt(c.p.gamma_c));
    const double s1 = trapezoid(tr.y, tr.grid.dt);
    CHECK(std::abs(s1) <= std::sqrt(c.p.gamma_c) * tr.grid.T());
  }
}

TEST_CASE("step halving converges at fourth order") {
  const SystemParams p = fig_params();
  const PulseShape pulse = PulseShape::exponential(p.gamma_con);
  const std::vector<double> hs = {0.08, 0.04, 0.02, 0.01};
  std::vector<std::vector<double>> ys;
  for (double h : hs) ys.push_back(evolve_hierarchy(p, pulse, TimeGrid::covering(20.0, h)).y);
  std::vector<double> err;
  for (std::size_t i = 0; i + 1 < hs.size(); ++i) err.push_back(max_abs_diff(ys[i], ys[i + 1], 2));
  // Least-squares slope of log err against log h.
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    mx += std::log(hs[i]) / err.size();
    my += std::log(err[i]) / err.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    sxy += (std::log(hs[i]) - mx) * (std::log(err[i]) - my);
    sxx += (std::log(hs[i]) - mx) * (std::log(hs[i]) - mx);
  }
  CHECK(sxy / sxx >= 3.5);
}

TEST_CASE("rectangular pulse converges across its edges") {
  // One-sided limits at the breakpoints keep the order despite the jumps.
  SystemParams p = fig_params();
  p.beta = 0.47;
  const PulseShape pulse = PulseShape::rectangular(0.5);  // edges at 0 and 2
  const auto y1 = evolve_hierarchy(p, pulse, TimeGrid::covering(6.0, 0.02)).y;
  const auto y2 = evolve_hierarchy(p, pulse, TimeGrid::covering(6.0, 0.01)).y;
  const auto y3 = evolve_hierarchy(p, pulse, TimeGrid::covering(6.0, 0.005)).y;
  const double e1 = max_abs_diff(y1, y2, 2);
  const double e2 = max_abs_diff(y2, y3, 2);
  CHECK(e1 / e2 > 11.0);  // 16 for a clean fourth-order method
}

TEST_CASE("frozen expected signal") {
  const SystemParams p = fig_params();
  const PulseShape pulse = PulseShape::exponential(p.gamma_con);
  const double s1 = expected_signal(p, pulse, default_grid(pulse, p.gamma_b));
  CHECK(std::abs(s1 - frozen::kExpectedSignalBaseline) < frozen::kExpectedSignalTolerance);
  // Three significant digits already at ten times the step.
  const double coarse = expected_signal(p, pulse, default_grid(pulse, p.gamma_b, 1e-2));
  CHECK(std::abs(coarse - s1) < 5e-4 * std::abs(s1));
}

TEST_CASE("pulse shapes give comparable polarisation peaks") {
  std::vector<double> peaks;
  for (const Case& c : cases()) {
    if (std::string(c.name) != "exponential" && std::string(c.name) != "rectangular" &&
        std::string(c.name) != "gaussian")
      continue;
    const HierarchyTrajectory tr = evolve_hierarchy(c.p, c.pulse, default_grid(c.pulse, c.p.gamma_b, 1e-2));
    double m = 0.0;
    for (double y : tr.y) m = std::max(m, std::abs(y));
    peaks.push_back(m);
  }
  REQUIRE(peaks.size() == 3);
  const double lo = *std::min_element(peaks.begin(), peaks.end());
  const double hi = *std::max_element(peaks.begin(), peaks.end());
  CHECK(lo > 0.0);
  CHECK(hi / lo < 1.5);
}

TEST_CASE("hierarchy matches the cavity-traced cascaded evolution") {
  for (double beta : {0.2, 0.4, 1.0}) {
    SystemParams p = fig_params();
    p.beta = beta;
    p.delta_b = beta == 1.0 ? 0.5 : 0.0;
    const TimeGrid grid = TimeGrid::covering(20.0, 2e-3);
    const HierarchyTrajectory tr = evolve_hierarchy(p, PulseShape::exponential(p.gamma_con), grid);
    const std::vector<Matrix3c> red = unconditional_evolve(p, grid, 1);
    REQUIRE(red.size() == grid.n_points());
    double worst = 0.0, worst_rho = 0.0;
    for (std::size_t k = 0; k < grid.n_points(); ++k) {
      worst = std::max(worst, std::abs(polarisation(red[k], p) - tr.y[k]));
      worst_rho = std::max(worst_rho, (red[k] - tr.states[k].rho11).cwiseAbs().maxCoeff());
    }
    CAPTURE(beta);
    CHECK(worst < 1e-6);
    CHECK(worst_rho < 1e-6);
  }
}

TEST_CASE("pack and unpack are inverse") {
  FockHierarchy h = FockHierarchy::ground();
  h.rho01(1, 2) = cplx(0.3, -0.1);
  h.rho10 = h.rho01.adjoint();
  const FockHierarchy back = FockHierarchy::unpack(h.pack());
  CHECK((back.rho01 - h.rho01).norm() == 0.0);
  CHECK((back.rho10 - h.rho10).norm() == 0.0);
  CHECK((back.rho11 - h.rho11).norm() == 0.0);
  CHECK(h.pack()(kBlock11).real() == 1.0);
}
