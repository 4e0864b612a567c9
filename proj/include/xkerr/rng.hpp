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
#include <random>

namespace xkerr {

// One independent Gaussian stream per trajectory. The engine is seeded through
// std::seed_seq from the 64-bit trajectory seed; normals come from Box-Muller
// on 53-bit uniforms so the sequence does not depend on the standard library's
// distribution implementation.
class TrajectoryRng {
 public:
  explicit TrajectoryRng(std::uint64_t seed);

  double normal();
  double wiener_increment(double dt) { return std::sqrt(dt) * normal(); }

 private:
  double uniform_open();  // (0, 1]

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace xkerr
