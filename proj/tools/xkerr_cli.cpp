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

// xkerr command line: runs configured experiments and the acceptance suite.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical or runtime
// failure, 4 acceptance failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "xkerr/acceptance.hpp"
#include "xkerr/config.hpp"
#include "xkerr/csv.hpp"
#include "xkerr/error.hpp"
#include "xkerr/experiments.hpp"

namespace {

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::optional<double> dt;
  std::optional<std::size_t> n_traj;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("-c,--config", f.config, "configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "override run.base_seed");
  cmd->add_option("-o,--out", f.out, "override run.output_dir");
  cmd->add_option("--threads", f.threads, "override run.threads (0 = hardware)");
  cmd->add_option("--dt", f.dt, "override run.dt");
  cmd->add_option("--ntraj", f.n_traj, "override run.n_traj");
}

xkerr::ConfigOverrides overrides_of(const RunFlags& f) {
  xkerr::ConfigOverrides o;
  if (f.seed) o.values["run.base_seed"] = std::to_string(*f.seed);
  if (f.out) o.values["run.output_dir"] = *f.out;
  if (f.threads) o.values["run.threads"] = std::to_string(*f.threads);
  if (f.dt) o.values["run.dt"] = xkerr::format_double(*f.dt);
  if (f.n_traj) o.values["run.n_traj"] = std::to_string(*f.n_traj);
  return o;
}

int run(const RunFlags& flags, const std::optional<xkerr::Experiment>& expected) {
  const xkerr::RunConfig cfg = xkerr::load_config(flags.config, overrides_of(flags));
  if (expected && cfg.experiment != *expected) {
    throw xkerr::ConfigError(std::string("config runs experiment '") + xkerr::experiment_name(cfg.experiment) +
                             "', not '" + xkerr::experiment_name(*expected) + "'");
  }
  const xkerr::RunReport report = xkerr::run_experiment(cfg);
  for (const std::string& line : report.summary) std::cout << line << "\n";
  for (const std::string& a : report.artifacts) std::cout << "wrote " << cfg.output_dir << "/" << a << "\n";
  return 0;
}

int check(const xkerr::AcceptanceOptions& base) {
  xkerr::AcceptanceOptions opt = base;
  opt.on_result = [](const xkerr::CriterionResult& r) { std::cout << xkerr::format_result(r) << std::endl; };
  int failed = 0;
  for (const auto& r : xkerr::run_acceptance(opt)) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "ALL PASS" : "FAILED: " + std::to_string(failed) + " criteria") << std::endl;
  return failed == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xkerr: single-photon detection SNR toolkit"};
  app.set_version_flag("--version", std::string(xkerr::kToolkitVersion));
  app.require_subcommand(1);

  RunFlags flags;
  std::optional<xkerr::Experiment> expected;
  CLI::App* run_cmd = app.add_subcommand("run", "run the experiment named in the config");
  add_run_flags(run_cmd, flags);

  for (xkerr::Experiment e : xkerr::all_experiments()) {
    CLI::App* cmd = app.add_subcommand(xkerr::experiment_name(e), std::string("run a ") +
                                                                    xkerr::experiment_name(e) +
                                                                    " config (the config must name it)");
    add_run_flags(cmd, flags);
    cmd->callback([&expected, e] { expected = e; });
  }

  xkerr::AcceptanceOptions acc;
  CLI::App* check_cmd = app.add_subcommand("check", "run the acceptance suite");
  check_cmd->add_option("--threads", acc.threads, "worker threads (0 = hardware)");
  check_cmd->add_option("--ntraj", acc.n_traj, "trajectories per photon number");
  check_cmd->add_option("--seed", acc.base_seed, "base seed");
  check_cmd->add_option("--dt", acc.dt, "integration step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check_cmd->parsed()) return check(acc);
    return run(flags, expected);
  } catch (const xkerr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
