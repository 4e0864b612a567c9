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

// Prints one PASS/FAIL line per primary criterion; exits nonzero if any fails.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "xkerr/acceptance.hpp"

int main(int argc, char** argv) {
  xkerr::AcceptanceOptions opt;
  CLI::App app{"xkerr acceptance suite"};
  app.add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  app.add_option("--ntraj", opt.n_traj, "trajectories per photon number");
  app.add_option("--seed", opt.base_seed, "base seed");
  app.add_option("--dt", opt.dt, "integration step");
  CLI11_PARSE(app, argc, argv);

  opt.on_result = [](const xkerr::CriterionResult& r) { std::cout << xkerr::format_result(r) << std::endl; };
  const auto results = xkerr::run_acceptance(opt);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "ALL PASS" : "FAILED") << " (" << results.size() - failed << "/" << results.size()
            << ")" << std::endl;
  return failed == 0 ? 0 : 1;
}
