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

#include "xkerr/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace xkerr {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const std::vector<double>& step,
                             const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n) throw std::invalid_argument("nelder_mead: bad dimensions");

  NelderMeadResult out;
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += step[i];
  for (std::size_t i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<std::vector<double>> x2;
    std::vector<double> f2;
    for (std::size_t i : order) {
      x2.push_back(xs[i]);
      f2.push_back(fs[i]);
    }
    xs = std::move(x2);
    fs = std::move(f2);
  };
  auto affine = [&](const std::vector<double>& c, const std::vector<double>& x, double t) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = c[i] + t * (x[i] - c[i]);
    return r;
  };

  sort_vertices();
  while (out.iterations < options.max_iterations) {
    double spread = 0.0;
    for (std::size_t v = 1; v <= n; ++v)
      for (std::size_t i = 0; i < n; ++i) spread = std::max(spread, std::abs(xs[v][i] - xs[0][i]));
    if (std::isfinite(fs[n]) && fs[n] - fs[0] < options.f_tolerance) {
      out.converged = true;
      break;
    }
    if (spread < options.x_tolerance) {
      out.converged = true;
      break;
    }
    ++out.iterations;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += xs[v][i] / static_cast<double>(n);

    const auto xr = affine(centroid, xs[n], -1.0);
    const double fr = eval(xr);
    if (fr < fs[0]) {
      const auto xe = affine(centroid, xs[n], -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        xs[n] = xe;
        fs[n] = fe;
      } else {
        xs[n] = xr;
        fs[n] = fr;
      }
    } else if (fr < fs[n - 1]) {
      xs[n] = xr;
      fs[n] = fr;
    } else {
      const bool outside = fr < fs[n];
      const auto xc = outside ? affine(centroid, xs[n], -0.5) : affine(centroid, xs[n], 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fs[n])) {
        xs[n] = xc;
        fs[n] = fc;
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          xs[v] = affine(xs[0], xs[v], 0.5);
          fs[v] = eval(xs[v]);
        }
      }
    }
    sort_vertices();
  }
  out.x = xs[0];
  out.f = fs[0];
  return out;
}

}  // namespace xkerr
