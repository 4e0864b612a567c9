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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "xkerr/error.hpp"
#include "xkerr/nelder_mead.hpp"
#include "xkerr/snr.hpp"
#include "xkerr/sweep.hpp"

using namespace xkerr;

namespace {

SignalSamples samples(std::vector<double> v, int n) {
  SignalSamples s;
  s.n_photon = n;
  s.n_traj = v.size();
  s.values = std::move(v);
  return s;
}

SweepSpec base_spec() {
  SweepSpec spec;
  spec.fixed.gamma_con = 0.6672;
  spec.fixed.beta = 0.4;
  return spec;
}

}  // namespace

TEST_CASE("identical ensembles carry no signal") {
  const std::vector<double> v = {0.3, -1.2, 0.8, 2.0, -0.1};
  const SnrResult r = estimate_snr_stochastic(samples(v, 1), samples(v, 0));
  CHECK(r.mean_s1 == r.mean_s0);
  CHECK(r.sigma_s0 == doctest::Approx(r.sigma_s1));
  CHECK(r.snr == doctest::Approx(std::abs(r.mean_s1) / (std::sqrt(2.0) * r.sigma_s)));
  CHECK(r.stderr_snr.has_value());
}

TEST_CASE("synthetic Gaussian ensembles recover the pooled SNR") {
  std::mt19937_64 gen(99);
  const double mu = -1.7, s0 = 2.0, s1 = 2.6;
  std::normal_distribution<double> d0(0.0, s0), d1(mu, s1);
  const std::size_t n = 20000;
  std::vector<double> a(n), b(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = d1(gen);
    b[k] = d0(gen);
  }
  const SnrResult r = estimate_snr_stochastic(samples(a, 1), samples(b, 0));
  const double exact = std::abs(mu) / std::sqrt(s0 * s0 + s1 * s1);
  REQUIRE(r.stderr_snr.has_value());
  CHECK(std::abs(r.snr - exact) < 3.0 * *r.stderr_snr);
  CHECK(*r.stderr_snr < 0.02);
  CHECK(r.n_traj == n);
  CHECK(r.method == SnrMethod::StochasticEnsemble);
}

TEST_CASE("SNR is invariant under a common scale") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> d(0.4, 1.0);
  std::vector<double> a(500), b(500);
  for (auto& x : a) x = d(gen);
  for (auto& x : b) x = d(gen) - 0.4;
  const double base = estimate_snr_stochastic(samples(a, 1), samples(b, 0)).snr;
  for (double c : {1e-3, 7.5, 1e4}) {
    std::vector<double> ca = a, cb = b;
    for (auto& x : ca) x *= c;
    for (auto& x : cb) x *= c;
    CHECK(std::abs(estimate_snr_stochastic(samples(ca, 1), samples(cb, 0)).snr - base) < 1e-12);
  }
}

TEST_CASE("too few samples") {
  CHECK_THROWS_AS(estimate_snr_stochastic(samples({1.0}, 1), samples({0.0, 1.0}, 0)), InsufficientSamples);
  CHECK_THROWS_AS(estimate_snr_stochastic(samples({1.0, 2.0}, 1), samples({}, 0)), InsufficientSamples);
}

TEST_CASE("statistics route") {
  SignalStatistics s1, s0;
  s1.mean = -2.0;
  s1.variance = 25.0;
  s0.variance = 23.0;
  const SnrResult r = snr_from_statistics(s1, s0);
  CHECK(r.sigma_s == doctest::Approx(std::sqrt(24.0)));
  CHECK(r.snr == doctest::Approx(2.0 / std::sqrt(48.0)));
  CHECK_FALSE(r.stderr_snr.has_value());
}

TEST_CASE("histogram") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> a(1500), b(1200);
  for (auto& x : a) x = d(gen) - 0.5;
  for (auto& x : b) x = d(gen);
  const Histogram h = make_histogram(b, a);
  REQUIRE(h.bin_edges.size() == h.counts_n0.size() + 1);
  REQUIRE(h.counts_n0.size() == h.counts_n1.size());
  CHECK(std::accumulate(h.counts_n0.begin(), h.counts_n0.end(), std::size_t{0}) == b.size());
  CHECK(std::accumulate(h.counts_n1.begin(), h.counts_n1.end(), std::size_t{0}) == a.size());
  for (std::size_t i = 0; i + 1 < h.bin_edges.size(); ++i) CHECK(h.bin_edges[i] < h.bin_edges[i + 1]);
  std::vector<double> all = a;
  all.insert(all.end(), b.begin(), b.end());
  CHECK(h.bin_edges.front() == *std::min_element(all.begin(), all.end()));
  CHECK(h.bin_edges.back() >= *std::max_element(all.begin(), all.end()));

  const Histogram flat = make_histogram({2.0, 2.0}, {2.0});
  CHECK(flat.counts_n0.size() == 1);
  CHECK(flat.counts_n0[0] == 2);
  CHECK(flat.counts_n1[0] == 1);
  CHECK_THROWS_AS(make_histogram({}, {}), InsufficientSamples);
}

TEST_CASE("sorted quantile") {
  const std::vector<double> v = {1.0, 2.0, 4.0, 8.0};
  CHECK(sorted_quantile(v, 0.0) == 1.0);
  CHECK(sorted_quantile(v, 1.0) == 8.0);
  CHECK(sorted_quantile(v, 0.5) == doctest::Approx(3.0));
  CHECK(sorted_quantile({5.0}, 0.3) == 5.0);
}

TEST_CASE("no probe, no signal") {
  SweepSpec spec = base_spec();
  SystemParams p = spec.fixed;
  p.beta = 0.0;
  const SnrResult r = evaluate_point(spec, p);
  CHECK(r.snr == 0.0);
  CHECK(r.sigma_s > 0.0);
}

TEST_CASE("one-point sweep equals the direct estimate") {
  SweepSpec spec = base_spec();
  spec.axes = {{SweepAxis::Beta, {0.4}}};
  const std::vector<SweepPoint> table = sweep(spec);
  REQUIRE(table.size() == 1);
  REQUIRE(table[0].result.has_value());
  const PulseShape pulse = PulseShape::exponential(0.6672);
  const SnrResult direct = estimate_snr_deterministic(spec.fixed, pulse, default_grid(pulse, 1.0));
  CHECK(table[0].result->snr == direct.snr);
  CHECK(table[0].result->snr == doctest::Approx(0.34195542).epsilon(1e-7));
}

TEST_CASE("stochastic sweeps do not depend on the thread count") {
  SweepSpec spec = base_spec();
  spec.method = SnrMethod::StochasticEnsemble;
  spec.dt = 1e-2;
  spec.n_traj = 40;
  spec.base_seed = 5;
  spec.axes = {{SweepAxis::Beta, {0.3, 0.6}}};
  spec.threads = 1;
  const auto a = sweep(spec);
  spec.threads = 3;
  const auto b = sweep(spec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].result.has_value());
    CHECK(a[i].result->snr == b[i].result->snr);
    CHECK(a[i].result->mean_s1 == b[i].result->mean_s1);
  }
  CHECK_THROWS_AS(optimize(spec), std::invalid_argument);
}

TEST_CASE("failing points are recorded and skipped") {
  SweepSpec spec = base_spec();
  spec.axes = {{SweepAxis::GammaCon, {-1.0, 0.6672}}};
  const auto table = sweep(spec);
  REQUIRE(table.size() == 2);
  CHECK_FALSE(table[0].result.has_value());
  CHECK_FALSE(table[0].error.empty());
  CHECK(best_point(table) == &table[1]);
}

TEST_CASE("best point breaks ties lexicographically") {
  std::vector<SweepPoint> t(3);
  t[0].coords = {1.0, 0.0};
  t[1].coords = {0.0, 1.0};
  t[2].coords = {0.0, 2.0};
  for (auto& p : t) {
    p.result = SnrResult{};
    p.result->snr = 0.3;
  }
  CHECK(best_point(t) == &t[1]);
  t[2].result->snr = 0.31;
  CHECK(best_point(t) == &t[2]);
  for (auto& p : t) p.result.reset();
  CHECK(best_point(t) == nullptr);
}

TEST_CASE("simplex minimises known functions") {
  auto rosen = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions opts;
  opts.f_tolerance = 1e-14;
  opts.max_iterations = 2000;
  const NelderMeadResult r = nelder_mead(rosen, {-1.2, 1.0}, {0.5, 0.5}, opts);
  CHECK(r.converged);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-3);
  CHECK(std::abs(r.x[1] - 1.0) < 1e-3);

  // NaN outside the box keeps the search inside.
  auto boxed = [](const std::vector<double>& x) {
    if (x[0] < 0.0) return std::nan("");
    return (x[0] + 1.0) * (x[0] + 1.0);
  };
  const NelderMeadResult b = nelder_mead(boxed, {1.0}, {0.5});
  CHECK(b.x[0] >= 0.0);
  CHECK(b.x[0] < 1e-2);

  const NelderMeadResult once = nelder_mead(rosen, {-1.2, 1.0}, {0.5, 0.5}, {1, 1e-14, 1e-14});
  CHECK_FALSE(once.converged);
  CHECK(once.iterations == 1);
}

TEST_CASE("simplex refinement localises the optimum of a coarse grid") {
  SweepSpec dense = base_spec();
  dense.optimizer = Optimizer::GridOnly;
  dense.axes = {{SweepAxis::Beta, linspace_step(0.35, 0.55, 0.005)}};
  const OptimizeResult ref = optimize(dense);

  SweepSpec coarse = base_spec();
  const double spacing = 0.25;
  coarse.axes = {{SweepAxis::Beta, linspace_step(0.05, 1.2, spacing)}};
  const OptimizeResult r = optimize(coarse);
  CAPTURE(ref.best.params.beta);
  CAPTURE(r.best.params.beta);
  CHECK(r.refined);
  CHECK(r.best.result->snr >= r.grid_best.result->snr);
  CHECK(std::abs(r.best.params.beta - ref.best.params.beta) < spacing / 10.0);
  CHECK(r.best.result->snr == doctest::Approx(ref.best.result->snr).epsilon(1e-3));
}

TEST_CASE("the four-parameter optimum sits at resonance") {
  SweepSpec spec = base_spec();
  spec.dt = 5e-3;
  spec.axes = {{SweepAxis::Beta, {0.3, 0.45, 0.6}},
               {SweepAxis::DeltaB, {-0.5, 0.0, 0.5}},
               {SweepAxis::DeltaC, {-0.5, 0.0, 0.5}},
               {SweepAxis::GammaCon, {0.5, 0.6672, 0.85}}};
  const OptimizeResult r = optimize(spec);
  CHECK(r.grid_best.params.delta_b == 0.0);
  CHECK(r.grid_best.params.delta_c == 0.0);
  CHECK(std::abs(r.best.params.delta_b) < 0.05);
  CHECK(std::abs(r.best.params.delta_c) < 0.05);
  CHECK(r.best.result->snr < 1.0);
}

TEST_CASE("linspace_step") {
  const auto v = linspace_step(0.05, 1.2, 0.05);
  CHECK(v.size() == 24);
  CHECK(v.back() == doctest::Approx(1.2));
  CHECK(linspace_step(-2.0, 2.0, 0.4).size() == 11);
  CHECK(linspace_step(1.0, 1.0, 0.1).size() == 1);
}
