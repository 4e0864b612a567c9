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
#include <string>
#include <vector>

namespace xkerr {

// Values frozen from the first converged computation. The squeezing band is
// the ratio max_r SNR(r) / SNR(0) over r = 0, 0.1, ..., 1.5 at theta = pi; the
// four-level threshold bounds the Omega = 10 population discrepancy
// (computed 0.044765); the signal constant is E[S_1] on the default grid at
// gamma_con = 0.6672, beta = 0.4, stable to five digits between dt = 1e-2 and 1e-3.
namespace frozen {
inline constexpr double kSqueezeGainRatio = 1.5111033671;
inline constexpr double kSqueezeGainTolerance = 1e-6;  // relative
inline constexpr double kFourLevelThreshold = 0.0448;
inline constexpr double kExpectedSignalBaseline = -2.25177;
inline constexpr double kExpectedSignalTolerance = 5e-5;
}  // namespace frozen

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  unsigned threads = 0;
  std::size_t n_traj = 5000;
  std::uint64_t base_seed = 20260101;
  double dt = 1e-3;
  // Called as each criterion finishes, so long runs report progress.
  std::function<void(const CriterionResult&)> on_result;
};

// Runs every primary criterion in order. A criterion that throws is reported
// as FAIL with the exception text.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

std::string format_result(const CriterionResult& r);

}  // namespace xkerr
