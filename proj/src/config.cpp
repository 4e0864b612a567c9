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

#include "xkerr/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "xkerr/error.hpp"

namespace xkerr {

namespace {

struct ExperimentName {
  Experiment e;
  const char* name;
};

constexpr ExperimentName kExperiments[] = {
    {Experiment::Polarisation, "polarisation"},
    {Experiment::SnrBetaSweep, "snr_beta"},
    {Experiment::SnrHistogram, "histogram"},
    {Experiment::DetuningMap, "detuning_map"},
    {Experiment::SqueezeSweep, "squeeze"},
    {Experiment::EnsembleRescale, "ensemble"},
    {Experiment::TransmissionSpectrum, "transmission"},
    {Experiment::CascadeSnr, "cascade"},
    {Experiment::FourLevelCompare, "fourlevel"},
    {Experiment::RatioSweep, "ratio"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& why) {
  throw ConfigError("invalid value '" + value + "' for " + key + ": " + why);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) bad_value(key, v, "expected a finite number");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "expected an integer");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "expected a non-negative integer");
  return x;
}

// "a, b, c" or "start:stop:step".
std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(to_double(key, trim(item)));
    if (parts.size() != 3) bad_value(key, v, "a range is start:stop:step");
    try {
      return linspace_step(parts[0], parts[1], parts[2]);
    } catch (const std::invalid_argument& e) {
      bad_value(key, v, e.what());
    }
  }
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) bad_value(key, v, "empty list");
  return out;
}

struct KeySpec {
  const char* key;
  std::optional<std::string> fallback;  // nullopt: required
  std::vector<Experiment> required_for;  // required only for these (empty: always when fallback is nullopt)
};

const std::vector<KeySpec>& key_specs() {
  using E = Experiment;
  static const std::vector<KeySpec> specs = {
      {"experiment", std::nullopt, {}},
      {"run.base_seed", std::nullopt, {}},
      {"run.dt", "0.001", {}},
      {"run.ring_down", "5", {}},
      {"run.n_traj", "5000", {}},
      {"run.threads", "0", {}},
      {"run.output_dir", "out", {}},
      {"run.method", "deterministic", {}},
      {"run.optimizer", "grid_simplex", {}},
      {"run.lo_phase", "-1.5707963267948966", {}},
      {"params.gamma_b", "1", {}},
      {"params.gamma_c", "2", {}},
      {"params.gamma_con", "0.6672", {}},
      {"params.delta_b", "0", {}},
      {"params.delta_c", "0", {}},
      {"params.beta", "0.4", {}},
      {"params.omega_p_convention", "sqrt_gamma_c", {}},
      {"params.pulse", "exponential", {}},
      {"sweep.beta", "", {E::SnrBetaSweep, E::CascadeSnr, E::RatioSweep}},
      {"sweep.delta_b", "", {E::DetuningMap}},
      {"sweep.delta_c", "", {E::DetuningMap}},
      {"sweep.gamma_con", "", {}},
      {"squeeze.r", "", {E::SqueezeSweep}},
      {"squeeze.theta", "3.141592653589793", {}},
      {"ensemble.n", "", {E::EnsembleRescale}},
      {"transmission.delta", "", {E::TransmissionSpectrum}},
      {"transmission.alpha", "1", {}},
      {"transmission.v_g", "", {}},
      {"transmission.variant", "sqrt_rate", {}},
      {"cascade.n_max", "20", {}},
      {"fourlevel.omega_drive", "10", {}},
      {"fourlevel.delta_12", "0", {}},
      {"fourlevel.gamma_01", "1", {}},
      {"fourlevel.gamma_12", "1", {}},
      {"fourlevel.gamma_32", "1", {}},
      {"fourlevel.alpha", "1", {}},
      {"fourlevel.beta_sig", "1", {}},
      {"fourlevel.omegas", "", {}},
      {"fourlevel.t_end", "20", {}},
      {"ratio.values", "", {E::RatioSweep}},
  };
  return specs;
}

const KeySpec* find_spec(const std::string& key) {
  for (const KeySpec& s : key_specs())
    if (key == s.key) return &s;
  return nullptr;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* experiment_name(Experiment e) {
  for (const auto& x : kExperiments)
    if (x.e == e) return x.name;
  return "?";
}

Experiment experiment_from_name(const std::string& name) {
  for (const auto& x : kExperiments)
    if (name == x.name) return x.e;
  std::string known;
  for (const auto& x : kExperiments) known += std::string(known.empty() ? "" : ", ") + x.name;
  throw ConfigError("unknown experiment '" + name + "' (expected one of: " + known + ")");
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> v = [] {
    std::vector<Experiment> out;
    for (const auto& x : kExperiments) out.push_back(x.e);
    return out;
  }();
  return v;
}

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec s;
  s.axes = axes;
  s.fixed = params;
  s.pulse = pulse;
  s.method = method;
  s.optimizer = optimizer;
  s.dt = dt;
  s.ring_down = ring_down;
  s.lo_phase = lo_phase;
  s.n_traj = n_traj;
  s.base_seed = base_seed;
  s.threads = threads;
  return s;
}

RunConfig parse_config(const std::string& text, const ConfigOverrides& overrides) {
  std::map<std::string, std::string> given;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (find_spec(key) == nullptr) throw ConfigError("unknown key '" + key + "' (line " + std::to_string(lineno) + ")");
    if (given.count(key)) throw ConfigError("key '" + key + "' given twice");
    if (value.empty()) throw ConfigError("key '" + key + "' has an empty value");
    given[key] = value;
  }
  for (const auto& [key, value] : overrides.values) {
    if (find_spec(key) == nullptr) throw ConfigError("unknown key '" + key + "'");
    given[key] = value;
  }

  RunConfig cfg;
  if (!given.count("experiment")) throw ConfigError("missing required key 'experiment'");
  cfg.experiment = experiment_from_name(given["experiment"]);

  for (const KeySpec& s : key_specs()) {
    if (given.count(s.key)) {
      cfg.resolved[s.key] = given[s.key];
      continue;
    }
    const bool needed = !s.fallback ||
                        std::find(s.required_for.begin(), s.required_for.end(), cfg.experiment) != s.required_for.end();
    if (needed) {
      throw ConfigError(std::string("missing required key '") + s.key + "' for experiment " +
                        experiment_name(cfg.experiment));
    }
    if (!s.fallback->empty()) {
      cfg.resolved[s.key] = *s.fallback;
      cfg.defaulted.push_back(s.key);
    }
  }
  const auto& r = cfg.resolved;
  auto has = [&](const char* k) { return r.count(k) > 0; };
  auto num = [&](const char* k) { return to_double(k, r.at(k)); };

  auto check = [](const std::function<void()>& validate) {
    try {
      validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  };

  cfg.base_seed = to_u64("run.base_seed", r.at("run.base_seed"));
  cfg.dt = num("run.dt");
  if (!(cfg.dt > 0.0)) throw ConfigError("run.dt must be positive");
  cfg.ring_down = num("run.ring_down");
  if (cfg.ring_down < 0.0) throw ConfigError("run.ring_down must be non-negative");
  const long long n_traj = to_int("run.n_traj", r.at("run.n_traj"));
  if (n_traj < 2) throw ConfigError("run.n_traj must be at least 2");
  cfg.n_traj = static_cast<std::size_t>(n_traj);
  const long long threads = to_int("run.threads", r.at("run.threads"));
  if (threads < 0) throw ConfigError("run.threads must be non-negative");
  cfg.threads = static_cast<unsigned>(threads);
  cfg.output_dir = r.at("run.output_dir");
  cfg.lo_phase = num("run.lo_phase");

  const std::string& method = r.at("run.method");
  if (method == "deterministic") cfg.method = SnrMethod::RegressionAnalytic;
  else if (method == "stochastic") cfg.method = SnrMethod::StochasticEnsemble;
  else bad_value("run.method", method, "expected deterministic or stochastic");
  const std::string& opt = r.at("run.optimizer");
  if (opt == "grid") cfg.optimizer = Optimizer::GridOnly;
  else if (opt == "grid_simplex") cfg.optimizer = Optimizer::GridThenSimplex;
  else bad_value("run.optimizer", opt, "expected grid or grid_simplex");

  SystemParams& p = cfg.params;
  p.gamma_b = num("params.gamma_b");
  p.gamma_c = num("params.gamma_c");
  p.gamma_con = num("params.gamma_con");
  p.delta_b = num("params.delta_b");
  p.delta_c = num("params.delta_c");
  p.beta = num("params.beta");
  const std::string& conv = r.at("params.omega_p_convention");
  if (conv == "sqrt_gamma_c") p.omega_p_convention = OmegaConvention::SqrtGammaC;
  else if (conv == "sqrt_gamma_con") p.omega_p_convention = OmegaConvention::SqrtGammaCon;
  else bad_value("params.omega_p_convention", conv, "expected sqrt_gamma_c or sqrt_gamma_con");
  check([&] { p.validate(); });
  try {
    cfg.pulse = pulse_kind_from_name(r.at("params.pulse"));
  } catch (const std::invalid_argument& e) {
    bad_value("params.pulse", r.at("params.pulse"), e.what());
  }

  const std::pair<const char*, SweepAxis> axis_keys[] = {{"sweep.beta", SweepAxis::Beta},
                                                         {"sweep.delta_b", SweepAxis::DeltaB},
                                                         {"sweep.delta_c", SweepAxis::DeltaC},
                                                         {"sweep.gamma_con", SweepAxis::GammaCon}};
  for (const auto& [key, axis] : axis_keys) {
    if (!has(key)) continue;
    AxisGrid g{axis, to_list(key, r.at(key))};
    for (double v : g.values) {
      SystemParams q = p;
      set_axis(q, axis, v);
      check([&] { q.validate(); });
    }
    cfg.axes.push_back(std::move(g));
  }

  if (has("squeeze.r")) cfg.squeeze_r = to_list("squeeze.r", r.at("squeeze.r"));
  cfg.squeeze_theta = num("squeeze.theta");
  for (double x : cfg.squeeze_r) check([&] { SqueezeParams{x, cfg.squeeze_theta}.validate(); });

  if (has("ensemble.n")) {
    for (double x : to_list("ensemble.n", r.at("ensemble.n"))) {
      if (x < 1.0 || x != std::floor(x)) bad_value("ensemble.n", r.at("ensemble.n"), "N must be a positive integer");
      cfg.ensemble_n.push_back(static_cast<int>(x));
    }
  }

  if (has("transmission.delta")) cfg.transmission_delta = to_list("transmission.delta", r.at("transmission.delta"));
  cfg.transmission_alpha = num("transmission.alpha");
  if (cfg.transmission_alpha < 0.0) throw ConfigError("transmission.alpha must be non-negative");
  cfg.v_g = has("transmission.v_g") ? num("transmission.v_g") : default_group_velocity();
  if (!(cfg.v_g > 0.0)) throw ConfigError("transmission.v_g must be positive");
  const std::string& variant = r.at("transmission.variant");
  if (variant == "sqrt_rate") cfg.variant = TransmissionVariant::SqrtRate;
  else if (variant == "uniform") cfg.variant = TransmissionVariant::Uniform;
  else bad_value("transmission.variant", variant, "expected sqrt_rate or uniform");

  const long long n_max = to_int("cascade.n_max", r.at("cascade.n_max"));
  if (n_max < 1) throw ConfigError("cascade.n_max must be at least 1");
  cfg.cascade_n_max = static_cast<int>(n_max);

  FourLevelParams& f = cfg.four_level;
  f = FourLevelParams::resonant(num("fourlevel.omega_drive"), num("fourlevel.delta_12"));
  f.gamma_01 = num("fourlevel.gamma_01");
  f.gamma_12 = num("fourlevel.gamma_12");
  f.gamma_32 = num("fourlevel.gamma_32");
  f.alpha = num("fourlevel.alpha");
  f.beta_sig = num("fourlevel.beta_sig");
  check([&] { f.validate(); });
  if (f.omega_drive == 0.0 && f.delta_12 == 0.0)
    throw ConfigError("fourlevel.omega_drive and fourlevel.delta_12 cannot both be zero");
  if (has("fourlevel.omegas")) cfg.four_level_omegas = to_list("fourlevel.omegas", r.at("fourlevel.omegas"));
  cfg.four_level_t_end = num("fourlevel.t_end");
  if (!(cfg.four_level_t_end > 0.0)) throw ConfigError("fourlevel.t_end must be positive");

  if (has("ratio.values")) {
    cfg.ratios = to_list("ratio.values", r.at("ratio.values"));
    for (double x : cfg.ratios)
      if (!(x >= 1.0 && x <= 100.0)) bad_value("ratio.values", r.at("ratio.values"), "ratios must lie in [1, 100]");
  }

  if (cfg.method == SnrMethod::StochasticEnsemble && cfg.pulse != PulseKind::Exponential)
    throw ConfigError("run.method = stochastic needs params.pulse = exponential");
  if (cfg.experiment == Experiment::SnrHistogram && cfg.pulse != PulseKind::Exponential)
    throw ConfigError("the histogram experiment needs params.pulse = exponential");
  return cfg;
}

RunConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string manifest_text(const RunConfig& cfg) {
  std::ostringstream out;
  out << "# xkerr run manifest\n";
  out << "# toolkit_version = " << kToolkitVersion << "\n";
  out << "# experiment = " << experiment_name(cfg.experiment) << "\n";
  if (cfg.method == SnrMethod::StochasticEnsemble || cfg.experiment == Experiment::SnrHistogram) {
    out << "# seeds n=1: " << cfg.base_seed << " .. " << cfg.base_seed + cfg.n_traj - 1 << "\n";
    out << "# seeds n=0: " << cfg.base_seed + cfg.n_traj << " .. " << cfg.base_seed + 2 * cfg.n_traj - 1 << "\n";
  }
  out << "# defaults applied:";
  for (const std::string& k : cfg.defaulted) out << " " << k;
  out << "\n";
  out << "# resolved gamma values: gamma_b = " << fmt17(cfg.params.gamma_b) << ", gamma_c = "
      << fmt17(cfg.params.gamma_c) << ", gamma_con = " << fmt17(cfg.params.gamma_con) << "\n";
  out << "experiment = " << experiment_name(cfg.experiment) << "\n";
  for (const auto& [key, value] : cfg.resolved) {
    if (key == "experiment") continue;
    const bool dflt = std::find(cfg.defaulted.begin(), cfg.defaulted.end(), key) != cfg.defaulted.end();
    out << key << " = " << value << (dflt ? "  # default" : "") << "\n";
  }
  return out.str();
}

}  // namespace xkerr
