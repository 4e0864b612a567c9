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

#include "xkerr/qutrit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "xkerr/error.hpp"

namespace xkerr {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
}

void check_dims(const Operator& r, const DensityMatrix& rho) {
  if (r.rows() != r.cols() || rho.rows() != rho.cols() || r.rows() != rho.rows()) {
    throw std::invalid_argument("operator and state dimensions differ");
  }
}

}  // namespace

Level level_from_label(char label) {
  switch (label) {
    case 'a':
      return Level::a;
    case 'b':
      return Level::b;
    case 'c':
      return Level::c;
    default:
      throw std::invalid_argument(std::string("unknown level label '") + label + "'");
  }
}

double SystemParams::omega_p() const {
  const double rate = omega_p_convention == OmegaConvention::SqrtGammaC ? gamma_c : gamma_con;
  return std::sqrt(rate) * beta;
}

void SystemParams::validate() const {
  require_positive(gamma_b, "gamma_b");
  require_positive(gamma_c, "gamma_c");
  require_positive(gamma_con, "gamma_con");
  require_finite(delta_b, "delta_b");
  require_finite(delta_c, "delta_c");
  require_finite(beta, "beta");
  if (beta < 0.0) throw std::invalid_argument("beta must be non-negative");
}

Operator sigma(Level i, Level j, int dim) {
  if (dim != 3 && dim != 6) throw std::invalid_argument("sigma: dim must be 3 or 6");
  Operator m = Operator::Zero(dim, dim);
  const int ii = static_cast<int>(i);
  const int jj = static_cast<int>(j);
  for (int n = 0; n < dim / 3; ++n) m(3 * n + ii, 3 * n + jj) = 1.0;
  return m;
}

Operator sigma(char i, char j, int dim) { return sigma(level_from_label(i), level_from_label(j), dim); }

Operator hamiltonian(const SystemParams& p) {
  p.validate();
  const double om = p.omega_p();
  return p.delta_c * sigma(Level::c, Level::c, 3) + p.delta_b * sigma(Level::b, Level::b, 3) +
         om * (sigma(Level::b, Level::c, 3) + sigma(Level::c, Level::b, 3));
}

Operator decay_b(const SystemParams& p) { return std::sqrt(p.gamma_b) * sigma(Level::a, Level::b, 3); }

Operator decay_c(const SystemParams& p) { return std::sqrt(p.gamma_c) * sigma(Level::b, Level::c, 3); }

Operator polarisation_operator(const SystemParams& p, int dim) {
  const cplx k(0.0, -std::sqrt(p.gamma_c));
  return k * (sigma(Level::b, Level::c, dim) - sigma(Level::c, Level::b, dim));
}

DensityMatrix dissipator(const Operator& r, const DensityMatrix& rho) {
  check_dims(r, rho);
  const Operator rdr = r.adjoint() * r;
  return r * rho * r.adjoint() - 0.5 * (rdr * rho + rho * rdr);
}

DensityMatrix meas_superop(const Operator& r, const DensityMatrix& rho) {
  check_dims(r, rho);
  const DensityMatrix m = r * rho + rho * r.adjoint();
  return m - m.trace() * rho;
}

double polarisation(const DensityMatrix& rho, const SystemParams& p) {
  if (rho.rows() != rho.cols() || (rho.rows() != 3 && rho.rows() != 6)) {
    throw std::invalid_argument("polarisation: state must be 3x3 or 6x6");
  }
  const cplx v = (polarisation_operator(p, static_cast<int>(rho.rows())) * rho).trace();
  if (std::abs(v.imag()) > 1e-10) {
    throw NumericalError("polarisation has imaginary part " + std::to_string(v.imag()));
  }
  return v.real();
}

Matrix3c trace_cavity(const Eigen::Ref<const Eigen::MatrixXcd>& rho) {
  if (rho.rows() != 6 || rho.cols() != 6) throw std::invalid_argument("trace_cavity: expected 6x6");
  return rho.block<3, 3>(0, 0) + rho.block<3, 3>(3, 3);
}

const std::array<Matrix3c, 8>& gell_mann_basis() {
  static const std::array<Matrix3c, 8> basis = [] {
    // position k of the (b, c, a) ordering -> internal index
    constexpr int pos[3] = {1, 2, 0};
    const cplx I(0.0, 1.0);
    std::array<Matrix3c, 8> l;
    for (auto& m : l) m.setZero();
    auto set_pair = [&](int idx, int r, int c, cplx upper) {
      l[idx](pos[r], pos[c]) = upper;
      l[idx](pos[c], pos[r]) = std::conj(upper);
    };
    set_pair(0, 0, 1, 1.0);
    set_pair(1, 0, 1, -I);
    l[2](pos[0], pos[0]) = 1.0;
    l[2](pos[1], pos[1]) = -1.0;
    set_pair(3, 0, 2, 1.0);
    set_pair(4, 0, 2, -I);
    set_pair(5, 1, 2, 1.0);
    set_pair(6, 1, 2, -I);
    const double s3 = 1.0 / std::sqrt(3.0);
    l[7](pos[0], pos[0]) = s3;
    l[7](pos[1], pos[1]) = s3;
    l[7](pos[2], pos[2]) = -2.0 * s3;
    return l;
  }();
  return basis;
}

GellMannVector gm_decompose(const Matrix3c& rho) {
  GellMannVector v;
  const auto& l = gell_mann_basis();
  for (int i = 0; i < 8; ++i) v.a[i] = (l[i] * rho).trace();
  return v;
}

Matrix3c gm_compose(const GellMannVector& v, bool traceful) {
  Matrix3c m = traceful ? Matrix3c(Matrix3c::Identity() / 3.0) : Matrix3c(Matrix3c::Zero());
  const auto& l = gell_mann_basis();
  for (int i = 0; i < 8; ++i) m += 0.5 * v.a[i] * l[i];
  return m;
}

}  // namespace xkerr
