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

#include "xkerr/cascaded.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "xkerr/error.hpp"
#include "xkerr/parallel.hpp"
#include "xkerr/rng.hpp"

namespace xkerr {

namespace {

Operator embed(const Operator& transmon) {
  return Eigen::kroneckerProduct(Eigen::Matrix2cd::Identity(), transmon).eval();
}

void check_photon(int n_photon) {
  if (n_photon != 0 && n_photon != 1) throw std::invalid_argument("n_photon must be 0 or 1");
}

void check_positive(const JointMatrix& rho, double dt) {
  Eigen::LLT<JointMatrix> llt(rho + 1e-6 * JointMatrix::Identity());
  if (llt.info() == Eigen::Success) return;
  Eigen::SelfAdjointEigenSolver<JointMatrix> es(rho, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -1e-6) {
    std::ostringstream msg;
    msg << "conditional state lost positivity (min eigenvalue " << lo << "); reduce dt (currently " << dt << ")";
    throw IntegrationError(msg.str(), dt);
  }
}

struct StepWork {
  JointMatrix m;
  JointMatrix m_rho;
  JointMatrix side;
};

void step_in_place(JointMatrix& rho, double dW, double dt, const CascadedModel& model, StepWork& w) {
  const JointMatrix& c = model.measured_operator();
  const double dy = (c * rho).trace().real() * 2.0 * dt + dW;
  w.m.noalias() = dt * model.generator() + dy * c;
  w.m.diagonal().array() += 1.0;
  model.unmonitored_sandwich().apply(rho, w.side);
  w.side *= dt;
  w.m_rho.noalias() = w.m * rho;
  w.side.noalias() += w.m_rho * w.m.adjoint();
  rho = 0.5 * (w.side + w.side.adjoint());
  rho *= 1.0 / rho.trace().real();
  check_positive(rho, dt);
}

}  // namespace

JointState JointState::initial(int n_photon) {
  check_photon(n_photon);
  JointState s;
  s.rho(3 * n_photon, 3 * n_photon) = 1.0;
  return s;
}

Operator cavity_annihilation() {
  Eigen::Matrix2cd a = Eigen::Matrix2cd::Zero();
  a(0, 1) = 1.0;
  return Eigen::kroneckerProduct(a, Eigen::Matrix3cd::Identity()).eval();
}

CascadedModel::CascadedModel(const SystemParams& p, double lo_phase) : params_(p) {
  p.validate();
  const Operator lc = embed(decay_c(p));
  assemble(embed(hamiltonian(p)), {lc}, std::polar(1.0, lo_phase) * lc, 1.0);
}

CascadedModel::CascadedModel(const SystemParams& p, const SqueezeParams& sq, double lo_phase) : params_(p) {
  p.validate();
  sq.validate();
  const Operator s = sigma(Level::b, Level::c, 6);
  const Operator sd = sigma(Level::c, Level::b, 6);
  const Operator bog = std::sqrt(p.gamma_c) * (std::cosh(sq.r) * s + (std::sinh(sq.r) * std::polar(1.0, -sq.theta)) * sd);
  const double n = sq.N();
  const cplx m = sq.M();
  const double k = std::sqrt(p.gamma_c / sq.L());
  const Operator c = k * ((n + 1.0 + m) * std::polar(1.0, lo_phase)) * s -
                     k * ((n + std::conj(m)) * std::polar(1.0, -lo_phase)) * sd;
  assemble(embed(hamiltonian(p)), {bog}, c, std::sqrt(sq.L()));
}

void CascadedModel::assemble(const Operator& h, const std::vector<Operator>& transmon_jumps, const Operator& c,
                             double noise_scale) {
  const Operator lb = embed(decay_b(params_));
  const Operator a = cavity_annihilation();
  const double root_con = std::sqrt(params_.gamma_con);
  const Operator h_eff = h + cplx(0.0, 0.5 * root_con) * (a.adjoint() * lb - lb.adjoint() * a);
  std::vector<Operator> jumps{root_con * a + lb};
  jumps.insert(jumps.end(), transmon_jumps.begin(), transmon_jumps.end());

  drift_dense_ = liouvillian(h_eff, jumps);
  drift_ = SparseSuperop(drift_dense_);
  Operator k = cplx(0.0, -1.0) * h_eff;
  Eigen::MatrixXcd sandwich = -sprepost(c, c.adjoint());
  for (const auto& j : jumps) {
    k -= 0.5 * j.adjoint() * j;
    sandwich += sprepost(j, j.adjoint());
  }
  // c rho c^dag cancels the measured channel up to rounding; drop the residue.
  const double floor = 1e-13 * sandwich.cwiseAbs().maxCoeff();
  sandwich = sandwich.unaryExpr([floor](cplx v) { return std::abs(v) <= floor ? cplx(0.0) : v; });
  sandwich_ = SparseSuperop(sandwich);
  k_ = k;
  c_ = c;
  c_sum_ = c_ + c_.adjoint();
  noise_scale_ = noise_scale;
}

double CascadedModel::record_mean(const JointMatrix& rho) const {
  return noise_scale_ * (c_sum_ * rho).trace().real();
}

JointState sme_step(const JointState& rho, double dW, double dt, const CascadedModel& model) {
  if (!(dt > 0.0)) throw std::invalid_argument("sme_step: dt must be positive");
  JointState out = rho;
  StepWork w;
  step_in_place(out.rho, dW, dt, model, w);
  return out;
}

JointState sme_step(const JointState& rho, double dW, double dt, const SystemParams& p) {
  return sme_step(rho, dW, dt, CascadedModel(p));
}

TrajectorySummary run_trajectory(const CascadedModel& model, const TimeGrid& grid, std::uint64_t seed,
                                 int n_photon, const TrajectoryObserver& observer) {
  JointMatrix rho = JointState::initial(n_photon).rho;
  TrajectoryRng rng(seed);
  StepWork w;
  TrajectorySummary out;
  const double dt = grid.dt;
  const double ns = model.noise_scale();
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    const double y = model.record_mean(rho);
    const double dW = rng.wiener_increment(dt);
    out.max_abs_y = std::max(out.max_abs_y, std::abs(y));
    out.signal += (y + ns * dW / dt) * dt;
    out.noise_integral += dW;
    step_in_place(rho, dW, dt, model, w);
    if (observer) observer(k, rho);
  }
  out.max_abs_y = std::max(out.max_abs_y, std::abs(model.record_mean(rho)));
  return out;
}

TrajectoryRecord simulate_trajectory(const CascadedModel& model, const TimeGrid& grid, std::uint64_t seed,
                                     int n_photon) {
  check_photon(n_photon);
  TrajectoryRecord rec;
  rec.seed = seed;
  rec.grid = grid;
  rec.n_photon = n_photon;
  rec.j_samples.reserve(grid.n_steps);
  JointMatrix rho = JointState::initial(n_photon).rho;
  TrajectoryRng rng(seed);
  StepWork w;
  const double dt = grid.dt;
  const double ns = model.noise_scale();
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    const double y = model.record_mean(rho);
    const double dW = rng.wiener_increment(dt);
    const double j = y + ns * dW / dt;
    rec.j_samples.push_back(j);
    rec.signal += j * dt;
    step_in_place(rho, dW, dt, model, w);
  }
  return rec;
}

TrajectoryRecord simulate_trajectory(const SystemParams& p, const TimeGrid& grid, std::uint64_t seed,
                                     int n_photon) {
  return simulate_trajectory(CascadedModel(p), grid, seed, n_photon);
}

SignalSamples simulate_ensemble(const CascadedModel& model, const TimeGrid& grid, std::size_t n_traj,
                                std::uint64_t base_seed, int n_photon, unsigned threads) {
  check_photon(n_photon);
  if (n_traj < 2) throw std::invalid_argument("ensemble needs at least two trajectories");
  std::vector<TrajectorySummary> results(n_traj);
  parallel_for(n_traj, threads, [&](std::size_t k) {
    const std::uint64_t seed = base_seed + k;
    try {
      results[k] = run_trajectory(model, grid, seed, n_photon);
    } catch (const IntegrationError& e) {
      throw IntegrationError("trajectory with seed " + std::to_string(seed) + ": " + e.what(), e.dt());
    }
  });
  SignalSamples out;
  out.n_photon = n_photon;
  out.n_traj = n_traj;
  out.values.reserve(n_traj);
  out.noise_integrals.reserve(n_traj);
  for (const auto& r : results) {
    out.values.push_back(r.signal);
    out.noise_integrals.push_back(r.noise_integral);
    out.max_abs_y = std::max(out.max_abs_y, r.max_abs_y);
  }
  return out;
}

std::vector<JointMatrix> unconditional_evolve_joint(const CascadedModel& model, const TimeGrid& grid,
                                                    int n_photon) {
  std::vector<JointMatrix> out;
  out.reserve(grid.n_points());
  JointMatrix rho = JointState::initial(n_photon).rho;
  JointMatrix k1, k2, k3, k4;
  const double h = grid.dt;
  const auto& d = model.drift();
  for (std::size_t k = 0; k <= grid.n_steps; ++k) {
    out.push_back(rho);
    if (k == grid.n_steps) break;
    d.apply(rho, k1);
    d.apply((rho + 0.5 * h * k1).eval(), k2);
    d.apply((rho + 0.5 * h * k2).eval(), k3);
    d.apply((rho + h * k3).eval(), k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return out;
}

std::vector<Matrix3c> unconditional_evolve(const SystemParams& p, const TimeGrid& grid, int n_photon) {
  check_photon(n_photon);
  const auto joint = unconditional_evolve_joint(CascadedModel(p), grid, n_photon);
  std::vector<Matrix3c> out;
  out.reserve(joint.size());
  for (const auto& r : joint) out.push_back(trace_cavity(r));
  return out;
}

}  // namespace xkerr
