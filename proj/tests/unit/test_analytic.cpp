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
#include <Eigen/LU>

#include "xkerr/analytic.hpp"
#include "xkerr/error.hpp"
#include "xkerr/fock_hierarchy.hpp"
#include "xkerr/regression.hpp"

using namespace xkerr;

namespace {

SystemParams resonant(double beta, double gamma_con) {
  SystemParams p;
  p.gamma_b = 1.0;
  p.gamma_c = 2.0;
  p.gamma_con = gamma_con;
  p.beta = beta;
  return p;
}

}  // namespace

TEST_CASE("constants at beta = 0") {
  const AnalyticCoeffs c = coeffs(resonant(0.0, 0.6672));
  CHECK(std::abs(c.theta - 1.0) < 1e-15);
  CHECK(std::abs(c.theta1 - 1.0) < 1e-15);
  CHECK(std::abs(c.theta2 - 0.5) < 1e-15);
  CHECK(c.kappa == doctest::Approx(0.3336));
}

TEST_CASE("theta identities") {
  for (double beta : {0.05, 0.1, 0.3, 0.4, 1.0, 2.5}) {
    const AnalyticCoeffs c = coeffs(resonant(beta, 0.6672));
    CHECK(std::abs(c.theta1 + c.theta2 - 1.5) < 1e-12);
    CHECK(std::abs(c.theta * c.theta - (1.0 - 32.0 * beta * beta)) < 1e-12);
  }
  const AnalyticCoeffs crit = coeffs(resonant(std::sqrt(1.0 / 32.0), 0.6672));
  CHECK(std::abs(crit.theta) < 1e-7);
  CHECK(crit.degenerate);
  const AnalyticCoeffs osc = coeffs(resonant(1.0, 1.0));
  CHECK(std::abs(osc.theta.real()) < 1e-15);
  CHECK(osc.theta.imag() != 0.0);
}

TEST_CASE("closed form only on resonance with gamma_c = 2 gamma_b") {
  SystemParams p = resonant(0.4, 0.6672);
  p.delta_b = 0.1;
  CHECK_THROWS_AS(coeffs(p), UnsupportedRegime);
  p = resonant(0.4, 0.6672);
  p.gamma_c = 3.0;
  CHECK_THROWS_AS(coeffs(p), UnsupportedRegime);
  p = resonant(0.4, 0.6672);
  p.omega_p_convention = OmegaConvention::SqrtGammaCon;
  CHECK_THROWS_AS(solve_rho11(p, TimeGrid(0.1, 10)), UnsupportedRegime);
}

TEST_CASE("coherence coefficients vanish at both ends") {
  for (double beta : {0.1, 0.4, 1.0}) {
    const SystemParams p = resonant(beta, 0.6672);
    const Rho01Coefficients z = rho01_coefficients(p, 0.0);
    CHECK(std::abs(z.a401) < 1e-14);
    CHECK(std::abs(z.a501) < 1e-14);
    CHECK(std::abs(z.a601) < 1e-14);
    CHECK(std::abs(z.a701) < 1e-14);
    const Rho01Coefficients inf = rho01_coefficients(p, 200.0);
    CHECK(std::abs(inf.a401) + std::abs(inf.a501) + std::abs(inf.a601) + std::abs(inf.a701) < 1e-20);
  }
}

TEST_CASE("coherence closed form matches the hierarchy integration") {
  // 5 x 5 grid over beta (including the oscillating regime) and gamma_con.
  double worst = 0.0;
  for (double beta : {0.1, 0.2, 0.4, 0.7, 1.0}) {
    for (double gcon : {0.5, 0.6672, 0.8, 1.0, 1.5}) {
      const SystemParams p = resonant(beta, gcon);
      const TimeGrid grid = TimeGrid::covering(15.0, 1e-3);
      const HierarchyTrajectory tr = evolve_hierarchy(p, PulseShape::exponential(gcon), grid);
      for (std::size_t k = 0; k < grid.n_points(); k += 25) {
        const GellMannVector v = gm_decompose(tr.states[k].rho01);
        const Rho01Coefficients c = rho01_coefficients(p, grid.t(k));
        worst = std::max({worst, std::abs(v.a[3] - c.a401), std::abs(v.a[4] - c.a501), std::abs(v.a[5] - c.a601),
                          std::abs(v.a[6] - c.a701)});
        for (int i : {0, 1, 2, 7}) worst = std::max(worst, std::abs(v.a[i]));
      }
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Bloch matrix") {
  const double g = 1.0, beta = 0.4;
  const BlochSystem s = bloch_system(resonant(beta, 0.6672));
  Eigen::Matrix3d expected;
  expected << -1.5 * g, -2.0 * std::sqrt(2.0 * g) * beta, 0.0, 2.0 * std::sqrt(2.0 * g) * beta, -2.5 * g,
      std::sqrt(3.0) * g / 2.0, 0.0, -std::sqrt(3.0) * g / 2.0, -0.5 * g;
  CHECK((s.A - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(s.x0(2) == doctest::Approx(-2.0 / std::sqrt(3.0)));
  for (double b : {0.0, 0.1, 0.4, 1.0, 3.0}) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(bloch_system(resonant(b, 0.6672)).A);
    CHECK(es.eigenvalues().real().maxCoeff() < 0.0);
  }
}

TEST_CASE("polarisation from the closed form") {
  // beta = 0: no probe, no polarisation.
  const TimeGrid grid = TimeGrid::covering(20.0, 1e-3);
  const Rho11Solution zero = solve_rho11(resonant(0.0, 0.6672), grid);
  for (double y : zero.y) CHECK(std::abs(y) < 1e-14);

  // Closed form against the numerical hierarchy, and against its own
  // propagated fallback, on several parameter sets.
  for (auto [beta, gcon] : {std::pair{1.0, 1.0}, std::pair{0.4, 0.6672}, std::pair{0.15, 2.0}, std::pair{2.0, 0.3}}) {
    const SystemParams p = resonant(beta, gcon);
    const Rho11Solution an = solve_rho11(p, grid);
    const Rho11Solution prop = solve_rho11_propagated(p, grid);
    const HierarchyTrajectory num = evolve_hierarchy(p, PulseShape::exponential(gcon), grid);
    double d_num = 0.0, d_prop = 0.0, d_tr = 0.0;
    for (std::size_t k = 0; k < grid.n_points(); ++k) {
      d_num = std::max(d_num, std::abs(an.y[k] - num.y[k]));
      d_prop = std::max(d_prop, std::abs(an.y[k] - prop.y[k]));
      d_tr = std::max(d_tr, std::abs(num.states[k].rho11.trace() - 1.0));
    }
    CAPTURE(beta);
    CAPTURE(gcon);
    CHECK(d_num < 1e-6);
    CHECK(d_prop < 1e-9);
    CHECK(d_tr < 1e-12);
    CHECK(an.x.front()(2) == doctest::Approx(-2.0 / std::sqrt(3.0)));
  }
}

TEST_CASE("critical coupling uses the fallback") {
  const SystemParams p = resonant(std::sqrt(1.0 / 32.0), 0.6672);
  const TimeGrid grid = TimeGrid::covering(10.0, 1e-3);
  const Rho11Solution an = solve_rho11(p, grid);
  CHECK(an.used_fallback);
  const HierarchyTrajectory num = evolve_hierarchy(p, PulseShape::exponential(p.gamma_con), grid);
  for (std::size_t k = 0; k < grid.n_points(); k += 100) CHECK(std::abs(an.y[k] - num.y[k]) < 1e-6);
}

TEST_CASE("late-time state solves the stationary Bloch system") {
  const SystemParams p = resonant(0.4, 0.6672);
  const BlochSystem s = bloch_system(p);
  const Eigen::Vector3d x_inf = s.A.partialPivLu().solve(-s.b_inf);
  const TimeGrid grid = TimeGrid::covering(80.0, 1e-2);
  const Rho11Solution an = solve_rho11(p, grid);
  CHECK((an.x.back() - x_inf).cwiseAbs().maxCoeff() < 1e-10);
  // Ground state is dark: a_2 = a_3 = 0, a_8 = -2/sqrt3.
  CHECK(std::abs(x_inf(0)) < 1e-12);
  CHECK(std::abs(x_inf(1)) < 1e-12);
  CHECK(x_inf(2) == doctest::Approx(-2.0 / std::sqrt(3.0)));
}

TEST_CASE("regression variance reduces to vacuum noise without a probe") {
  const PulseShape pulse = PulseShape::exponential(0.6672);
  const TimeGrid grid = default_grid(pulse, 1.0, 1e-2);
  const double v = variance_regression(resonant(0.0, 0.6672), pulse, grid);
  CHECK(v == doctest::Approx(grid.T()).epsilon(1e-12));
  for (double beta : {0.2, 0.45, 1.0}) CHECK(variance_regression(resonant(beta, 0.6672), pulse, grid) > 0.0);
}
