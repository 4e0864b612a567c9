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

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace xkerr {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;
using Matrix3c = Eigen::Matrix3cd;

// Canonical internal ordering of the transmon levels.
enum class Level : int { a = 0, b = 1, c = 2 };

Level level_from_label(char label);

enum class OmegaConvention { SqrtGammaC, SqrtGammaCon };

struct SystemParams {
  double gamma_b = 1.0;
  double gamma_c = 2.0;
  double gamma_con = 0.6672;
  double delta_b = 0.0;
  double delta_c = 0.0;
  double beta = 0.4;
  OmegaConvention omega_p_convention = OmegaConvention::SqrtGammaC;

  // Probe Rabi coupling Omega_p.
  double omega_p() const;
  // Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

// |i><j|, optionally tensored with the identity of a two-level cavity (dim 6,
// index = n * 3 + level).
Operator sigma(Level i, Level j, int dim);
Operator sigma(char i, char j, int dim);

Operator hamiltonian(const SystemParams& p);
// L_b = sqrt(gamma_b) |a><b|, L_c = sqrt(gamma_c) |b><c|.
Operator decay_b(const SystemParams& p);
Operator decay_c(const SystemParams& p);
// y = -i sqrt(gamma_c) (|b><c| - |c><b|).
Operator polarisation_operator(const SystemParams& p, int dim = 3);

// D[r]rho = r rho r^dag - (r^dag r rho + rho r^dag r) / 2.
DensityMatrix dissipator(const Operator& r, const DensityMatrix& rho);
// H[r]rho = r rho + rho r^dag - Tr[r rho + rho r^dag] rho.
DensityMatrix meas_superop(const Operator& r, const DensityMatrix& rho);

// <y> for a 3x3 transmon state or a 6x6 cavity-transmon state.
double polarisation(const DensityMatrix& rho, const SystemParams& p);

// Reduced transmon state of a 6x6 cavity-transmon matrix.
Matrix3c trace_cavity(const Eigen::Ref<const Eigen::MatrixXcd>& rho);

// Gell-Mann layer. Basis vectors are ordered (b, c, a) so that lambda_2 is the
// b-c polarisation and the ground state has a_8 = -2/sqrt(3).
struct GellMannVector {
  std::array<cplx, 8> a{};
};

const std::array<Matrix3c, 8>& gell_mann_basis();
GellMannVector gm_decompose(const Matrix3c& rho);
// traceful adds the I/3 term of a unit-trace block.
Matrix3c gm_compose(const GellMannVector& v, bool traceful);

}  // namespace xkerr
