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

#include "xkerr/superop.hpp"

#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace xkerr {

Eigen::MatrixXcd sprepost(const Operator& left, const Operator& right) {
  return Eigen::kroneckerProduct(right.transpose(), left);
}

Eigen::MatrixXcd spre(const Operator& a) {
  return sprepost(a, Operator::Identity(a.rows(), a.cols()));
}

Eigen::MatrixXcd spost(const Operator& b) {
  return sprepost(Operator::Identity(b.rows(), b.cols()), b);
}

Eigen::MatrixXcd commutator_superop(const Operator& h) { return spre(h) - spost(h); }

Eigen::MatrixXcd dissipator_superop(const Operator& r) {
  const Operator rdr = r.adjoint() * r;
  return sprepost(r, r.adjoint()) - 0.5 * (spre(rdr) + spost(rdr));
}

Eigen::MatrixXcd liouvillian(const Operator& h, const std::vector<Operator>& jumps) {
  Eigen::MatrixXcd l = cplx(0.0, -1.0) * commutator_superop(h);
  for (const auto& r : jumps) l += dissipator_superop(r);
  return l;
}

SparseSuperop::SparseSuperop(const Eigen::MatrixXcd& dense) {
  for (Eigen::Index r = 0; r < dense.rows(); ++r) {
    for (Eigen::Index c = 0; c < dense.cols(); ++c) {
      if (dense(r, c) != cplx(0.0, 0.0)) {
        entries_.push_back({static_cast<int>(r), static_cast<int>(c), dense(r, c)});
      }
    }
  }
}

LindbladSolver::LindbladSolver(const Operator& h, const std::vector<Operator>& jumps)
    : superop_(liouvillian(h, jumps)), dim_(h.rows()) {}

DensityMatrix LindbladSolver::rhs(const DensityMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw std::invalid_argument("LindbladSolver: dimension mismatch");
  Eigen::VectorXcd v = superop_ * rho.reshaped();
  return v.reshaped(dim_, dim_);
}

void LindbladSolver::step(DensityMatrix& rho, double dt) const {
  const DensityMatrix k1 = rhs(rho);
  const DensityMatrix k2 = rhs(rho + 0.5 * dt * k1);
  const DensityMatrix k3 = rhs(rho + 0.5 * dt * k2);
  const DensityMatrix k4 = rhs(rho + dt * k3);
  rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace xkerr
