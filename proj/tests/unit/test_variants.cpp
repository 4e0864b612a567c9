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

#include "xkerr/acceptance.hpp"
#include "xkerr/cascade_chain.hpp"
#include "xkerr/cascaded.hpp"
#include "xkerr/fock_hierarchy.hpp"
#include "xkerr/four_level.hpp"
#include "xkerr/ratio_sweep.hpp"
#include "xkerr/rescaling.hpp"
#include "xkerr/rng.hpp"
#include "xkerr/snr.hpp"
#include "xkerr/squeezing.hpp"
#include "xkerr/sweep.hpp"

using namespace xkerr;

namespace {

SystemParams fig_params(double beta = 0.4) {
  SystemParams p;
  p.gamma_con = 0.6672;
  p.beta = beta;
  return p;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double var(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

SweepSpec beta_spec(double step) {
  SweepSpec spec;
  spec.fixed = fig_params();
  spec.axes = {{SweepAxis::Beta, linspace_step(0.05, 1.2, step)}};
  return spec;
}

}  // namespace

// --- squeezing --------------------------------------------------------------

TEST_CASE("squeeze parameter identities") {
  for (double r : {0.0, 0.1, 0.5, 1.0, 1.5}) {
    for (double theta : {0.0, 0.7, M_PI, 4.0}) {
      const SqueezeParams sq{r, theta};
      CHECK(sq.N() >= 0.0);
      CHECK(std::abs(std::norm(sq.M()) - sq.N() * (sq.N() + 1.0)) < 1e-12 * std::max(1.0, sq.N() * sq.N()));
      const cplx l = 1.0 + 2.0 * sq.N() + sq.M() + std::conj(sq.M());
      CHECK(std::abs(l.imag()) < 1e-12);
      CHECK(sq.L() == doctest::Approx(l.real()).epsilon(1e-12));
    }
    CHECK(std::abs(SqueezeParams{r, 0.0}.L() * SqueezeParams{r, M_PI}.L() - 1.0) < 1e-12);
    CHECK(SqueezeParams{r, M_PI}.L() == doctest::Approx(std::exp(-2.0 * r)).epsilon(1e-12));
  }
  const SqueezeParams zero{0.0, 1.3};
  CHECK(zero.N() == 0.0);
  CHECK(zero.M() == cplx(0.0));
  CHECK(zero.L() == 1.0);
  CHECK(SqueezeParams::noise_reducing(0.4).theta == doctest::Approx(M_PI));
  CHECK(squeezing_db(std::log(10.0) / 2.0) == doctest::Approx(10.0));
  CHECK_THROWS_AS((SqueezeParams{-0.1, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("zero squeezing reproduces the plain step bit for bit") {
  const SystemParams p = fig_params();
  const CascadedModel plain(p);
  const CascadedModel squeezed(p, SqueezeParams{0.0, M_PI});
  TrajectoryRng rng(17);
  JointState a = JointState::initial(1);
  JointState b = a;
  for (int k = 0; k < 3000; ++k) {
    const double dW = rng.wiener_increment(1e-3);
    a = sme_step(a, dW, 1e-3, p);
    b = squeezed_sme_step(b, dW, 1e-3, p, SqueezeParams{0.0, M_PI});
  }
  CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() == 0.0);
  const TimeGrid grid = TimeGrid::covering(5.0, 1e-3);
  CHECK(run_trajectory(plain, grid, 5, 1).signal == run_trajectory(squeezed, grid, 5, 1).signal);
}

TEST_CASE("squeezed steps keep trace and Hermiticity") {
  const SystemParams p = fig_params();
  const SqueezeParams sq{0.8, M_PI};
  TrajectoryRng rng(23);
  JointState s = JointState::initial(1);
  for (int k = 0; k < 3000; ++k) {
    s = squeezed_sme_step(s, rng.wiener_increment(1e-3), 1e-3, p, sq);
    CHECK(std::abs(s.rho.trace() - 1.0) < 1e-14);
    CHECK((s.rho - s.rho.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("squeezing gain over r stays within the frozen band and below unity") {
  const SystemParams p = fig_params();
  const PulseShape pulse = PulseShape::exponential(p.gamma_con);
  const TimeGrid grid = default_grid(pulse, p.gamma_b);
  double s0 = 0.0, best = 0.0;
  for (int i = 0; i <= 15; ++i) {
    const double s = estimate_snr_squeezed(p, SqueezeParams{0.1 * i, M_PI}, pulse, grid).snr;
    if (i == 0) s0 = s;
    best = std::max(best, s);
  }
  CHECK(s0 == doctest::Approx(estimate_snr_deterministic(p, pulse, grid).snr).epsilon(1e-12));
  CHECK(best < 1.0);
  CHECK(std::abs(best / s0 / frozen::kSqueezeGainRatio - 1.0) < frozen::kSqueezeGainTolerance);
}

TEST_CASE("squeezed stochastic record matches its regression statistics") {
  const SystemParams p = fig_params();
  const SqueezeParams sq{0.4, M_PI};
  const PulseShape pulse = PulseShape::exponential(p.gamma_con);
  const TimeGrid grid = default_grid(pulse, p.gamma_b);
  const std::size_t n = 400;
  const SignalSamples s1 = simulate_ensemble(CascadedModel(p, sq), grid, n, 4242, 1);
  const SignalStatistics det = squeezed_signal_statistics(p, sq, pulse, grid, 1);
  CHECK(std::abs(mean(s1.values) - det.mean) < 3.0 * std::sqrt(var(s1.values) / n));
  CHECK(std::abs(var(s1.values) - det.variance) < 3.0 * det.variance * std::sqrt(2.0 / (n - 1.0)));
}

// --- ensemble rescaling ----------------------------------------------------

TEST_CASE("rescaling with one emitter is the identity") {
  const SystemParams p = fig_params();
  const RescaledParams r = ensemble_rescaled_params(p, 1);
  CHECK(r.params.gamma_b == p.gamma_b);
  CHECK(r.params.gamma_c == p.gamma_c);
  CHECK(r.params.gamma_con == p.gamma_con);
  CHECK(r.params.beta == p.beta);
  CHECK(r.time_scale == 1.0);
  CHECK(r.signal_scale == 1.0);
  CHECK_THROWS_AS(ensemble_rescaled_params(p, 0), std::invalid_argument);
}

TEST_CASE("deterministic SNR is invariant under rescaling") {
  const SystemParams p = fig_params();
  const PulseShape pulse = PulseShape::exponential(p.gamma_con);
  const TimeGrid grid = default_grid(pulse, p.gamma_b);
  const double base = estimate_snr_deterministic(p, pulse, grid).snr;
  for (int n : {2, 10}) {
    const RescaledParams r = ensemble_rescaled_params(p, n);
    const TimeGrid g = rescale_grid(grid, n);
    CHECK(g.n_steps == grid.n_steps);
    CHECK(g.T() == doctest::Approx(grid.T() / n));
    const double s = estimate_snr_deterministic(r.params, PulseShape::exponential(r.params.gamma_con), g).snr;
    CHECK(std::abs(s - base) < 1e-8);
  }
}

TEST_CASE("rescaled polarisation overlays the single-emitter curve") {
  for (auto [beta, db] : {std::pair{0.2, 0.0}, std::pair{0.4, 0.5}, std::pair{1.0, -0.3}}) {
    SystemParams p = fig_params(beta);
    p.delta_b = db;
    const TimeGrid grid = TimeGrid::covering(20.0, 2e-3);
    const auto y1 = evolve_hierarchy(p, PulseShape::exponential(p.gamma_con), grid).y;
    for (int n : {2, 10}) {
      const RescaledParams r = ensemble_rescaled_params(p, n);
      const auto yn =
          evolve_hierarchy(r.params, PulseShape::exponential(r.params.gamma_con), rescale_grid(grid, n)).y;
      double worst = 0.0;
      for (std::size_t k = 0; k < y1.size(); ++k) worst = std::max(worst, std::abs(yn[k] / r.signal_scale - y1[k]));
      CAPTURE(beta);
      CAPTURE(n);
      CHECK(worst < 1e-10);
    }
  }
}

// --- transmission and cascade ---------------------------------------------

TEST_CASE("transmission limits") {
  const SystemParams p = fig_params();
  const double vg = default_group_velocity();
  CHECK(vg == doctest::Approx(1.0 / std::sqrt(5.9)));
  for (auto variant : {TransmissionVariant::SqrtRate, TransmissionVariant::Uniform}) {
    CHECK(std::abs(transmission(0.3, -0.2, 1e4, p, vg, variant) - 1.0) < 1e-6);
    CHECK(std::abs(transmission(1e9, 0.4, 0.5, p, vg, variant) - 1.0) < 1e-8);
  }
  CHECK_THROWS_AS(transmission(0.0, 0.0, 1.0, p, 0.0), std::invalid_argument);
}

TEST_CASE("transmission magnitude on a dense parameter grid") {
  const double vg = default_group_velocity();
  double worst_uniform = 0.0, worst_sqrt = 0.0;
  for (double gc : {0.25, 0.5, 1.0, 2.0, 5.0}) {
    for (double alpha : {0.0, 0.3, 1.0, 3.0}) {
      for (double d = -10.0; d <= 10.0; d += 0.05) {
        SystemParams p;
        p.gamma_c = gc;
        const double u = std::abs(transmission(d, d, alpha, p, vg, TransmissionVariant::Uniform));
        const double a = std::abs(transmission(d, d, alpha, p, vg, TransmissionVariant::SqrtRate));
        worst_uniform = std::max(worst_uniform, u);
        worst_sqrt = std::max(worst_sqrt, a);
      }
    }
  }
  CHECK(worst_uniform <= 1.0);
  CHECK(worst_sqrt <= 1.0);
}

TEST_CASE("transparency window width") {
  SystemParams p;
  p.gamma_c = 2.0;
  const double w = transparency_width(p, 1.0, default_group_velocity());
  CHECK(w == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("cascade formula") {
  for (double T : {0.0, 0.08, 0.5, 1.0}) CHECK(snr_cascade(1, 0.34, T) == 0.34);
  for (int n = 1; n <= 20; ++n) {
    CHECK(snr_cascade(n, 0.34, 1.0) == std::sqrt(static_cast<double>(n)) * 0.34);
    for (double T : {0.1, 0.6}) {
      CHECK(snr_cascade(n, 0.68, T) == doctest::Approx(2.0 * snr_cascade(n, 0.34, T)).epsilon(1e-15));
      CHECK(std::abs(snr_cascade(n, 0.34, 1.0) - snr_cascade(n, 0.34, 1.0 - 1e-10)) < 1e-7);
    }
  }
  // n = 2 by hand: sqrt2 T + R / sqrt2.
  CHECK(snr_cascade(2, 1.0, 0.3) == doctest::Approx(std::sqrt(2.0) * 0.3 + 0.7 / std::sqrt(2.0)));
  CHECK_THROWS_AS(snr_cascade(0, 0.3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(snr_cascade(2, 0.3, 1.5), std::invalid_argument);
}

// --- four-level reduction --------------------------------------------------

TEST_CASE("dressed states") {
  const FourLevelParams r = FourLevelParams::resonant(10.0);
  CHECK(r.theta_mix() == doctest::Approx(M_PI / 4));
  CHECK(r.lambda_plus() == doctest::Approx(5.0));
  CHECK(r.lambda_minus() == doctest::Approx(-5.0));
  for (auto [om, d] : {std::pair{10.0, 0.0}, std::pair{3.0, 2.0}, std::pair{0.5, -4.0}}) {
    FourLevelParams q;
    q.omega_drive = om;
    q.delta_12 = d;
    CHECK(std::abs(q.lambda_plus() + q.lambda_minus() - d) < 1e-12);
    CHECK(std::abs(q.lambda_plus() * q.lambda_minus() + om * om / 4.0) < 1e-12);
  }
  FourLevelParams weak;
  weak.omega_drive = 1e-8;
  weak.delta_12 = 1.0;
  CHECK(std::abs(weak.theta_mix()) < 1e-8);

  // Unit rates and amplitudes leave the couplings as cos and sin of the angle.
  FourLevelParams unit = FourLevelParams::resonant(10.0);
  unit.gamma_01 = unit.gamma_32 = 1.0;
  unit.alpha = unit.beta_sig = 1.0;
  const ReducedLadder red = four_level_reduce(unit);
  CHECK(red.signal_coupling * red.signal_coupling + red.probe_coupling * red.probe_coupling ==
        doctest::Approx(1.0).epsilon(1e-14));

  FourLevelParams degenerate = FourLevelParams::resonant(10.0);
  degenerate.omega_drive = 0.0;
  degenerate.delta_12 = 0.0;
  CHECK_THROWS_AS(four_level_reduce(degenerate), std::domain_error);
  FourLevelParams off = FourLevelParams::resonant(10.0);
  off.delta_10 += 1.0;
  CHECK_THROWS_AS(four_level_reduce(off), std::invalid_argument);
}

TEST_CASE("four-level model against the reduced ladder") {
  const TimeGrid grid = TimeGrid::covering(20.0, 1e-3);
  std::vector<double> sup;
  for (double om : {5.0, 10.0, 20.0, 40.0}) {
    const PopulationComparison c = compare_four_level(FourLevelParams::resonant(om), grid);
    CHECK(c.max_trace_error < 1e-8);
    sup.push_back(c.sup_norm);
  }
  CHECK(sup[1] < frozen::kFourLevelThreshold);
  for (std::size_t i = 0; i + 1 < sup.size(); ++i) CHECK(sup[i + 1] < sup[i]);
}

// --- ratio sweep -----------------------------------------------------------

TEST_CASE("ratio sweep") {
  const std::vector<double> ratios = {1.0, 2.0, 5.0, 10.0, 30.0, 100.0};
  const std::vector<RatioPoint> coarse = ratio_sweep(ratios, beta_spec(0.05));
  const std::vector<RatioPoint> fine = ratio_sweep(ratios, beta_spec(0.025));
  REQUIRE(coarse.size() == ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    CAPTURE(ratios[i]);
    CHECK(coarse[i].snr_opt < 1.0);
    CHECK(std::abs(fine[i].snr_opt - coarse[i].snr_opt) < 0.01 * coarse[i].snr_opt);
  }
  // gamma_c / gamma_b = 2 is the baseline optimisation.
  const OptimizeResult base = optimize(beta_spec(0.05));
  CHECK(coarse[1].snr_opt == base.best.result->snr);
  CHECK(coarse[1].beta_opt == base.best.params.beta);

  CHECK_THROWS_AS(ratio_sweep({0.5}, beta_spec(0.05)), std::invalid_argument);
  SweepSpec bad = beta_spec(0.05);
  bad.axes.push_back({SweepAxis::GammaC, {2.0}});
  CHECK_THROWS_AS(ratio_sweep({2.0}, bad), std::invalid_argument);
}
