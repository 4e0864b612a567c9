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

#include "xkerr/fock_hierarchy.hpp"
#include "xkerr/pulse.hpp"
#include "xkerr/time_grid.hpp"

using namespace xkerr;

namespace {

// Interval-wise trapezoid with one-sided limits at each end, so rectangle
// edges on grid points count exactly half.
double trapezoid_abs2(const PulseShape& p, const TimeGrid& g) {
  double s = 0.0;
  for (std::size_t k = 0; k < g.n_steps; ++k)
    s += 0.5 * (std::norm(amplitude(p, g.t(k), Side::Right)) + std::norm(amplitude(p, g.t(k + 1), Side::Left)));
  return s * g.dt;
}

// Upper tail of a [0, inf)-truncated Gaussian |f|^2 ~ exp(-((t - t0)/tau)^2),
// solved by bisection on erfc.
double gaussian_horizon_oracle(double t0, double tau, double eps) {
  const double mass = 1.0 + std::erf(t0 / tau);
  auto tail = [&](double t) { return std::erfc((t - t0) / tau) / mass; };
  double lo = 0.0, hi = t0 + 20.0 * tau;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > eps ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("exponential envelope") {
  const double g = 0.6672;
  const PulseShape p = PulseShape::exponential(g);
  CHECK(amplitude(p, 0.0).real() == doctest::Approx(std::sqrt(g)).epsilon(1e-15));
  CHECK(amplitude(p, 2.0).real() == doctest::Approx(std::sqrt(g) * std::exp(-g)).epsilon(1e-14));
  CHECK(amplitude(p, 2.0).imag() == 0.0);
  CHECK(captured_fraction(p, 1e6) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(capture_horizon(p, std::exp(-10.0)) == doctest::Approx(10.0 / g).epsilon(1e-14));
  CHECK_THROWS_AS(amplitude(p, -1e-9), std::invalid_argument);
  CHECK_THROWS_AS(capture_horizon(p, 0.0), std::invalid_argument);
}

TEST_CASE("rectangular envelope") {
  const PulseShape p = PulseShape::rectangular(0.5);  // tau = 2
  CHECK(amplitude(p, 0.0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(amplitude(p, 1.3).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(amplitude(p, 2.0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(amplitude(p, 2.0001).real() == 0.0);
  CHECK(amplitude(p, 2.0, Side::Left).real() > 0.0);
  CHECK(amplitude(p, 2.0, Side::Right).real() == 0.0);
  CHECK(amplitude(p, 0.0, Side::Right).real() > 0.0);
  for (double eps : {1e-1, 1e-4, 1e-10}) CHECK(capture_horizon(p, eps) == doctest::Approx(2.0));
  CHECK(captured_fraction(p, 1.0) == doctest::Approx(0.5));
  REQUIRE(p.breakpoints().size() == 2);
}

TEST_CASE("gaussian envelope") {
  const double g = 0.6672;
  const PulseShape p = PulseShape::gaussian(g);
  const double tau = 1.0 / g;
  CHECK(p.t_offset == doctest::Approx(3.0 * tau));
  CHECK(std::abs(amplitude(p, 0.0)) < 0.02 * std::abs(amplitude(p, p.t_offset)));
  CHECK(captured_fraction(p, 1e6) == doctest::Approx(1.0).epsilon(1e-15));

  // One-sided tail 1e-4 sits about 2.63 tau past the centre; the two-sided
  // 1e-4 interval is +-2.75 tau.
  const double T = capture_horizon(p, 1e-4);
  CHECK(T == doctest::Approx(gaussian_horizon_oracle(p.t_offset, tau, 1e-4)).epsilon(1e-10));
  CHECK((T - p.t_offset) / tau == doctest::Approx(2.63).epsilon(0.005));
  CHECK(std::erfc(2.75) == doctest::Approx(1e-4).epsilon(0.05));
}

TEST_CASE("grid normalisation") {
  const double eps = std::exp(-10.0);
  for (double g : {0.5, 0.6672, 1.0, 2.0}) {
    for (PulseKind kind : {PulseKind::Exponential, PulseKind::Gaussian, PulseKind::Rectangular}) {
      const PulseShape p = PulseShape::of_kind(kind, g);
      const TimeGrid grid = default_grid(p, 1.0);
      const double s = trapezoid_abs2(p, grid);
      CAPTURE(g);
      CAPTURE(pulse_kind_name(kind));
      CHECK(s >= 1.0 - eps - 1e-10);
      if (kind == PulseKind::Exponential) {
        // The trapezoid overshoots a convex integrand by g^2 dt^2 / 12 to
        // leading order, above 1e-10 at dt = 1e-3.
        CHECK(std::abs(s - captured_fraction(p, grid.T())) <= g * g * grid.dt * grid.dt / 12.0 * 1.01);
      } else {
        CHECK(s <= 1.0 + 1e-10);
      }
      if (kind == PulseKind::Rectangular) {
        CHECK(std::abs(s - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("default grid") {
  const PulseShape e = PulseShape::exponential(0.6672);
  const TimeGrid g = default_grid(e, 1.0);
  CHECK(g.dt == 1e-3);
  CHECK(g.T() >= 10.0 / 0.6672 + 5.0);
  CHECK(g.T() < 10.0 / 0.6672 + 5.0 + g.dt);
  CHECK(std::abs(g.T() - g.dt * static_cast<double>(g.n_steps)) < 1e-12);

  // Rectangle edges land on grid points.
  const PulseShape r = PulseShape::rectangular(0.7);
  const TimeGrid gr = default_grid(r, 1.0);
  const double k = r.width / gr.dt;
  CHECK(std::abs(k - std::round(k)) < 1e-9);
  CHECK(gr.dt <= 1e-3);
  CHECK_THROWS_AS(default_grid(e, 0.0), std::invalid_argument);
}

TEST_CASE("pulse names") {
  for (PulseKind k : {PulseKind::Exponential, PulseKind::Gaussian, PulseKind::Rectangular})
    CHECK(pulse_kind_from_name(pulse_kind_name(k)) == k);
  CHECK_THROWS_AS(pulse_kind_from_name("lorentzian"), std::invalid_argument);
}
