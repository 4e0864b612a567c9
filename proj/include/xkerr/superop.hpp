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

#include <vector>

#include <Eigen/Dense>

#include "xkerr/qutrit.hpp"

namespace xkerr {

// Column-major vectorisation: vec(A X B) = (B^T kron A) vec(X).
Eigen::MatrixXcd sprepost(const Operator& left, const Operator& right);
Eigen::MatrixXcd spre(const Operator& a);
Eigen::MatrixXcd spost(const Operator& b);

Eigen::MatrixXcd commutator_superop(const Operator& h);  // X -> [h, X]
Eigen::MatrixXcd dissipator_superop(const Operator& r);
Eigen::MatrixXcd liouvillian(const Operator& h, const std::vector<Operator>& jumps);

// Sparse form of a small dense superoperator acting on fixed-size matrices.
class SparseSuperop {
 public:
  SparseSuperop() = default;
  explicit SparseSuperop(const Eigen::MatrixXcd& dense);

  // out = S vec(in); in and out must not alias.
  template <typename In, typename Out>
  void apply(const In& in, Out& out) const {
    out.setZero();
    const cplx* src = in.data();
    cplx* dst = out.data();
    for (const Entry& e : entries_) dst[e.row] += e.value * src[e.col];
  }

  std::size_t nonzeros() const { return entries_.size(); }

 private:
  struct Entry {
    int row;
    int col;
    cplx value;
  };
  std::vector<Entry> entries_;
};

// Generic Lindblad RK4 for small dense systems.
class LindbladSolver {
 public:
  LindbladSolver(const Operator& h, const std::vector<Operator>& jumps);
  void step(DensityMatrix& rho, double dt) const;
  DensityMatrix rhs(const DensityMatrix& rho) const;

 private:
  Eigen::MatrixXcd superop_;
  Eigen::Index dim_;
};

}  // namespace xkerr
