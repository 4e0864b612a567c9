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

#include "xkerr/analytic.hpp"

#include <cmath>
#include <iostream>

#include <unsupported/Eigen/MatrixFunctions>

#include "xkerr/error.hpp"

namespace xkerr {

namespace {

void require_supported(const SystemParams& p) {
  p.validate();
  if (p.delta_b != 0.0 || p.delta_c != 0.0) throw UnsupportedRegime("closed form requires zero detunings");
  if (std::abs(p.gamma_c - 2.0 * p.gamma_b) > 1e-12 * p.gamma_b) {
    throw UnsupportedRegime("closed form requires gamma_c = 2 gamma_b");
  }
  if (p.omega_p_convention != OmegaConvention::SqrtGammaC) {
    throw UnsupportedRegime("closed form requires Omega_p = sqrt(gamma_c) beta");
  }
}

double rabi(const SystemParams& p) { return std::sqrt(2.0 * p.gamma_b) * p.beta; }

// (e^{lam t} - e^{-mu t}) / (lam + mu), series near lam + mu = 0.
cplx exp_difference(cplx lam, cplx mu, double t) {
  const cplx s = (lam + mu) * t;
  if (std::abs(s) < 1e-6) return std::exp(lam * t) * t * (1.0 - 0.5 * s + s * s / 6.0);
  return (std::exp(lam * t) - std::exp(-mu * t)) / (lam + mu);
}

Eigen::Vector3d rho01_propagated(const SystemParams& p, double t) {
  const double g = p.gamma_b;
  const double om = rabi(p);
  Eigen::Matrix3d m;
  m << -0.5 * g, -om, -std::sqrt(g * p.gamma_con),
       om, -g, 0.0,
       0.0, 0.0, -0.5 * p.gamma_con;
  return (m * t).exp() * Eigen::Vector3d(0.0, 0.0, 1.0);
}

}  // namespace

AnalyticCoeffs coeffs(const SystemParams& p) {
  require_supported(p);
  const double g = p.gamma_b;
  const double b = p.beta;
  const double gc = p.gamma_con;
  const double sg = std::sqrt(g);
  AnalyticCoeffs k;
  k.kappa = 0.5 * gc;
  k.theta = std::sqrt(cplx(g - 32.0 * b * b, 0.0));
  k.theta1 = 0.75 * g + sg * k.theta / 4.0;
  k.theta2 = 0.75 * g - sg * k.theta / 4.0;
  const double d = 2.0 * g * (4.0 * b * b + g) - 3.0 * g * gc + gc * gc;
  const double scale = std::max({g * g, gc * gc, 1e-300});
  k.degenerate = std::abs(k.theta) < 1e-7 * sg || std::abs(d) < 1e-10 * scale;
  const cplx th = k.theta;
  k.c[0] = k.degenerate ? cplx(0.0) : std::sqrt(g * gc) / (th * d);
  k.c[1] = 2.0 * sg * (8.0 * b * b - g + sg * th) + gc * (sg - th);
  k.c[2] = 2.0 * sg * (-8.0 * b * b + g + sg * th) - gc * (sg + th);
  k.c[3] = 2.0 * th * (gc - 2.0 * g);
  k.c[4] = 2.0 * std::sqrt(2.0) * b * (-3.0 * g + 2.0 * gc + sg * th);
  k.c[5] = 2.0 * std::sqrt(2.0) * b * (3.0 * g - 2.0 * gc + sg * th);
  k.c[6] = 4.0 * std::sqrt(2.0 * g) * b * th;
  return k;
}

Rho01Coefficients rho01_coefficients(const SystemParams& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("rho01_coefficients: t must be non-negative");
  const AnalyticCoeffs k = coeffs(p);
  cplx u, w;
  if (k.degenerate) {
    const Eigen::Vector3d v = rho01_propagated(p, t);
    u = v(0);
    w = v(1);
  } else {
    const cplx e1 = std::exp(-k.theta1 * t);
    const cplx e2 = std::exp(-k.theta2 * t);
    const double ek = std::exp(-k.kappa * t);
    u = k.c[0] * (k.c[1] * e1 + k.c[2] * e2 + k.c[3] * ek);
    w = k.c[0] * (k.c[4] * e1 + k.c[5] * e2 - k.c[6] * ek);
  }
  const cplx i(0.0, 1.0);
  return {u, -i * u, i * w, w};
}

Eigen::Vector3d BlochSystem::drive(double t) const {
  const Rho01Coefficients r = rho01_coefficients(params, t);
  const double g = params.gamma_b;
  const double f = std::sqrt(params.gamma_con) * std::exp(-0.5 * params.gamma_con * t);
  const double u = r.a401.real();
  const double w = r.a701.real();
  return b_inf + Eigen::Vector3d(2.0 * std::sqrt(g) * f * w, -2.0 * std::sqrt(g) * f * u,
                                 -2.0 * std::sqrt(3.0 * g) * f * u);
}

BlochSystem bloch_system(const SystemParams& p) {
  require_supported(p);
  const double g = p.gamma_b;
  const double om2 = 2.0 * rabi(p);
  const double s3 = std::sqrt(3.0);
  BlochSystem s;
  s.params = p;
  s.A << -1.5 * g, -om2, 0.0,
         om2, -2.5 * g, 0.5 * s3 * g,
         0.0, -0.5 * s3 * g, -0.5 * g;
  s.b_inf = Eigen::Vector3d(0.0, g, -g / s3);
  s.x0 = Eigen::Vector3d(0.0, 0.0, -2.0 / s3);
  return s;
}

Rho11Solution solve_rho11_propagated(const SystemParams& p, const TimeGrid& grid) {
  const BlochSystem sys = bloch_system(p);
  const double g = p.gamma_b;
  const double gc = p.gamma_con;
  const double kappa = 0.5 * gc;
  const double om = rabi(p);
  const double sg = std::sqrt(g);
  // z = (f u, f w, a2, a3, a8, e^{-gamma_con t}, 1)
  Eigen::Matrix<double, 7, 7> m = Eigen::Matrix<double, 7, 7>::Zero();
  m(0, 0) = -kappa - 0.5 * g;
  m(0, 1) = -om;
  m(0, 5) = -sg * gc;
  m(1, 0) = om;
  m(1, 1) = -kappa - g;
  m.block<3, 3>(2, 2) = sys.A;
  m(2, 1) = 2.0 * sg;
  m(3, 0) = -2.0 * sg;
  m(4, 0) = -2.0 * std::sqrt(3.0) * sg;
  m.block<3, 1>(2, 6) = sys.b_inf;
  m(5, 5) = -gc;
  const Eigen::Matrix<double, 7, 7> step = (m * grid.dt).exp();
  Eigen::Matrix<double, 7, 1> z;
  z << 0.0, 0.0, sys.x0, 1.0, 1.0;
  Rho11Solution out;
  out.used_fallback = true;
  out.x.reserve(grid.n_points());
  out.y.reserve(grid.n_points());
  const double sgc = std::sqrt(p.gamma_c);
  for (std::size_t k = 0; k <= grid.n_steps; ++k) {
    const Eigen::Vector3d x = z.segment<3>(2);
    out.x.push_back(x);
    out.y.push_back(sgc * x(0));
    z = step * z;
  }
  return out;
}

Rho11Solution solve_rho11(const SystemParams& p, const TimeGrid& grid) {
  const AnalyticCoeffs k = coeffs(p);
  const BlochSystem sys = bloch_system(p);
  Eigen::EigenSolver<Eigen::Matrix3d> es(sys.A);
  const Eigen::Matrix3cd v = es.eigenvectors();
  const Eigen::Vector3cd lam = es.eigenvalues();
  const Eigen::JacobiSVD<Eigen::Matrix3cd> svd(v);
  const double cond = svd.singularValues()(0) / svd.singularValues()(2);
  if (k.degenerate || !(cond < 1e8)) {
    std::clog << "solve_rho11: closed form singular (cond " << cond << "), propagating numerically\n";
    return solve_rho11_propagated(p, grid);
  }
  const Eigen::Matrix3cd q = v.inverse();
  const double g = p.gamma_b;
  const double sg = std::sqrt(g);
  const cplx pref = std::sqrt(p.gamma_con) * k.c[0];
  // Drive terms beta_j e^{-mu_j t}.
  const std::array<cplx, 3> mu = {k.theta1 + k.kappa, k.theta2 + k.kappa, cplx(p.gamma_con)};
  const std::array<cplx, 3> uj = {k.c[1], k.c[2], k.c[3]};
  const std::array<cplx, 3> wj = {k.c[4], k.c[5], -k.c[6]};
  std::array<Eigen::Vector3cd, 3> qbeta;
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector3cd beta;
    beta << 2.0 * sg * pref * wj[j], -2.0 * sg * pref * uj[j], -2.0 * std::sqrt(3.0) * sg * pref * uj[j];
    qbeta[j] = q * beta;
  }
  const Eigen::Vector3cd qx0 = q * sys.x0.cast<cplx>();
  const Eigen::Vector3cd qb0 = q * sys.b_inf.cast<cplx>();

  Rho11Solution out;
  out.x.reserve(grid.n_points());
  out.y.reserve(grid.n_points());
  const double sgc = std::sqrt(p.gamma_c);
  for (std::size_t n = 0; n <= grid.n_steps; ++n) {
    const double t = grid.t(n);
    Eigen::Vector3cd z;
    for (int i = 0; i < 3; ++i) {
      const cplx el = std::exp(lam(i) * t);
      cplx zi = el * qx0(i) + qb0(i) * (el - 1.0) / lam(i);
      for (int j = 0; j < 3; ++j) zi += qbeta[j](i) * exp_difference(lam(i), mu[j], t);
      z(i) = zi;
    }
    const Eigen::Vector3d x = (v * z).real();
    out.x.push_back(x);
    out.y.push_back(sgc * x(0));
  }
  return out;
}

}  // namespace xkerr
