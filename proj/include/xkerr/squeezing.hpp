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

#include "xkerr/cascaded.hpp"
#include "xkerr/fock_hierarchy.hpp"
#include "xkerr/regression.hpp"
#include "xkerr/squeeze_params.hpp"

namespace xkerr {

// sqrt(gamma_c)(cosh r s_bc + sinh r e^{-i theta} s_cb); D of this operator is
// (N + 1) D[L_c] + N D[L_c^dag] + gamma_c (M s_bc rho s_bc + M* s_cb rho s_cb).
Matrix3c squeezed_bath_operator(const SystemParams& p, const SqueezeParams& sq);

// Transmon generator with the b-c channel coupled to a squeezed bath.
Superop3 squeezed_transmon_liouvillian(const SystemParams& p, const SqueezeParams& sq);

// Squeezed measurement operator on the transmon,
// sqrt(gamma_c / L) [(N + 1 + M) s_bc e^{i phase} - (N + M*) s_cb e^{-i phase}].
Matrix3c squeezed_measurement_operator(const SystemParams& p, const SqueezeParams& sq,
                                       double lo_phase = kDefaultLoPhase);

JointState squeezed_sme_step(const JointState& rho, double dW, double dt, const SystemParams& p,
                             const SqueezeParams& sq);

// Regression statistics of the squeezed record I = <y> + sqrt(L) xi.
SignalStatistics squeezed_signal_statistics(const SystemParams& p, const SqueezeParams& sq,
                                            const PulseShape& pulse, const TimeGrid& grid, int n_photon,
                                            double lo_phase = kDefaultLoPhase);

}  // namespace xkerr
