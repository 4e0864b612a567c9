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

#include <string>
#include <vector>

#include "xkerr/config.hpp"

namespace xkerr {

struct RunReport {
  std::vector<std::string> summary;    // headline lines, also written to summary.txt
  std::vector<std::string> artifacts;  // file names inside the output directory
};

// Runs one experiment into cfg.output_dir: manifest.txt, the experiment CSV and
// summary.txt. An INCOMPLETE marker exists for the duration of the run and is
// left behind if the run throws.
RunReport run_experiment(const RunConfig& cfg);

// Name of the CSV an experiment writes.
std::string experiment_csv(Experiment e);

}  // namespace xkerr
