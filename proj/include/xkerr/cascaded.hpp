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

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "xkerr/qutrit.hpp"
#include "xkerr/regression.hpp"
#include "xkerr/squeeze_params.hpp"
#include "xkerr/superop.hpp"
#include "xkerr/time_grid.hpp"

namespace xkerr {

// Source cavity {|0>, |1>} tensored with the transmon; index = n * 3 + level.
using JointMatrix = Eigen::Matrix<cplx, 6, 6>;

struct JointState {
  JointMatrix rho = JointMatrix::Zero();
  // |n><n| (x) |a><a|.
  static JointState initial(int n_photon);
};

Operator cavity_annihilation();

// Cascaded source-cavity + transmon model under homodyne detection of the
// probe output. Drift
//   -i[H, rho] + gamma_con D[a] rho + D[L_b] rho + D[L_c] rho
//   + sqrt(gamma_con) ([L_b, rho a^dag] + [a rho, L_b^dag]),
// held in the equivalent Lindblad form with collective jump
// C = sqrt(gamma_con) a + L_b and Hamiltonian
// H + (i sqrt(gamma_con) / 2)(a^dag L_b - L_b^dag a). The measured operator is
// c = e^{i phase} L_c. With a squeezed probe L_c is replaced by the Bogoliubov
// operator sqrt(gamma_c)(cosh r s_bc + sinh r e^{-i theta} s_cb), c by the
// squeezed measurement operator, and the current becomes <y> + sqrt(L) xi.
class CascadedModel {
 public:
  explicit CascadedModel(const SystemParams& p, double lo_phase = kDefaultLoPhase);
  CascadedModel(const SystemParams& p, const SqueezeParams& sq, double lo_phase = kDefaultLoPhase);

  const SystemParams& params() const { return params_; }
  const Eigen::MatrixXcd& drift_dense() const { return drift_dense_; }
  const SparseSuperop& drift() const { return drift_; }
  // Effective non-Hermitian generator K = -i H_eff - sum_j J_j^dag J_j / 2.
  const JointMatrix& generator() const { return k_; }
  // sum over jumps of J rho J^dag minus the measured c rho c^dag.
  const SparseSuperop& unmonitored_sandwich() const { return sandwich_; }
  const JointMatrix& measured_operator() const { return c_; }
  double noise_scale() const { return noise_scale_; }

  // <sqrt(L) (c + c^dag)>, the mean of the recorded current.
  double record_mean(const JointMatrix& rho) const;

 private:
  void assemble(const Operator& h, const std::vector<Operator>& jumps, const Operator& c, double noise_scale);

  SystemParams params_;
  Eigen::MatrixXcd drift_dense_;
  SparseSuperop drift_;
  SparseSuperop sandwich_;
  JointMatrix k_;
  JointMatrix c_;
  JointMatrix c_sum_;  // c + c^dag
  double noise_scale_ = 1.0;
};

// First-order update rho' = M rho M^dag + dt sum_j J_j rho J_j^dag with
// M = I + K dt + c dy and dy = <c + c^dag> dt + dW (the unmonitored sum excludes
// the measured channel), followed by Hermitisation and trace renormalisation.
// To first order this is the Euler-Maruyama increment L rho dt + H[c] rho dW,
// and it keeps the state positive. Throws IntegrationError if the updated state
// has an eigenvalue below -1e-6.
JointState sme_step(const JointState& rho, double dW, double dt, const CascadedModel& model);
JointState sme_step(const JointState& rho, double dW, double dt, const SystemParams& p);

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  TimeGrid grid;
  std::vector<double> j_samples;  // J_k = <record>_k + sqrt(L) dW_k / dt
  double signal = 0.0;            // sum_k J_k dt
  int n_photon = 0;
};

// Called after each step with the step index k (state at t_{k+1}).
using TrajectoryObserver = std::function<void(std::size_t, const JointMatrix&)>;

TrajectoryRecord simulate_trajectory(const CascadedModel& model, const TimeGrid& grid, std::uint64_t seed,
                                     int n_photon);
TrajectoryRecord simulate_trajectory(const SystemParams& p, const TimeGrid& grid, std::uint64_t seed,
                                     int n_photon);

struct TrajectorySummary {
  double signal = 0.0;
  double noise_integral = 0.0;  // sum_k dW_k
  double max_abs_y = 0.0;       // over all steps, of the record mean
};

TrajectorySummary run_trajectory(const CascadedModel& model, const TimeGrid& grid, std::uint64_t seed,
                                 int n_photon, const TrajectoryObserver& observer = {});

struct SignalSamples {
  std::vector<double> values;
  std::vector<double> noise_integrals;
  int n_photon = 0;
  std::size_t n_traj = 0;
  double max_abs_y = 0.0;
};

// Trajectory k uses seed base_seed + k; results are ordered by k.
SignalSamples simulate_ensemble(const CascadedModel& model, const TimeGrid& grid, std::size_t n_traj,
                                std::uint64_t base_seed, int n_photon, unsigned threads = 0);

// Deterministic evolution with the noise term dropped (RK4 on the drift).
std::vector<JointMatrix> unconditional_evolve_joint(const CascadedModel& model, const TimeGrid& grid,
                                                    int n_photon);
std::vector<Matrix3c> unconditional_evolve(const SystemParams& p, const TimeGrid& grid, int n_photon);

}  // namespace xkerr
