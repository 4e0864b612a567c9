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

#include "xkerr/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/erf.hpp>

namespace xkerr {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// erfc(-t0/tau): mass of the untruncated Gaussian above t = 0, in units of
// its full mass times two.
double gaussian_norm_mass(const PulseShape& p) { return std::erfc(-p.t_offset / p.width); }

}  // namespace

PulseShape PulseShape::exponential(double gamma_con) { return {PulseKind::Exponential, 1.0 / gamma_con, 0.0}; }

PulseShape PulseShape::gaussian(double gamma_con) {
  const double tau = 1.0 / gamma_con;
  return {PulseKind::Gaussian, tau, 3.0 * tau};
}

PulseShape PulseShape::rectangular(double gamma_con) { return {PulseKind::Rectangular, 1.0 / gamma_con, 0.0}; }

PulseShape PulseShape::of_kind(PulseKind kind, double gamma_con) {
  switch (kind) {
    case PulseKind::Exponential:
      return exponential(gamma_con);
    case PulseKind::Gaussian:
      return gaussian(gamma_con);
    case PulseKind::Rectangular:
      return rectangular(gamma_con);
  }
  throw std::invalid_argument("unknown pulse kind");
}

void PulseShape::validate() const {
  if (!(std::isfinite(width) && width > 0.0)) throw std::invalid_argument("pulse width must be positive");
  if (!std::isfinite(t_offset) || t_offset < 0.0) throw std::invalid_argument("pulse offset must be non-negative");
}

std::vector<double> PulseShape::breakpoints() const {
  if (kind == PulseKind::Rectangular) return {t_offset, t_offset + width};
  return {};
}

cplx amplitude(const PulseShape& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("pulse amplitude requested at negative time");
  const double tau = p.width;
  switch (p.kind) {
    case PulseKind::Exponential:
      return std::sqrt(1.0 / tau) * std::exp(-0.5 * t / tau);
    case PulseKind::Gaussian: {
      const double n2 = 2.0 / (tau * kSqrtPi * gaussian_norm_mass(p));
      const double z = (t - p.t_offset) / tau;
      return std::sqrt(n2) * std::exp(-0.5 * z * z);
    }
    case PulseKind::Rectangular:
      return (t >= p.t_offset && t <= p.t_offset + tau) ? 1.0 / std::sqrt(tau) : 0.0;
  }
  return 0.0;
}

cplx amplitude(const PulseShape& p, double t, Side side) {
  if (p.kind != PulseKind::Rectangular) return amplitude(p, t);
  if (!(t >= 0.0)) throw std::invalid_argument("pulse amplitude requested at negative time");
  const double lo = p.t_offset;
  const double hi = p.t_offset + p.width;
  const bool inside = side == Side::Right ? (t >= lo && t < hi) : (t > lo && t <= hi);
  return inside ? 1.0 / std::sqrt(p.width) : 0.0;
}

double captured_fraction(const PulseShape& p, double t) {
  if (t <= 0.0) return 0.0;
  const double tau = p.width;
  switch (p.kind) {
    case PulseKind::Exponential:
      return -std::expm1(-t / tau);
    case PulseKind::Gaussian:
      return (std::erf((t - p.t_offset) / tau) + std::erf(p.t_offset / tau)) / gaussian_norm_mass(p);
    case PulseKind::Rectangular: {
      const double inside = std::clamp(t - p.t_offset, 0.0, tau);
      return inside / tau;
    }
  }
  return 0.0;
}

double capture_horizon(const PulseShape& p, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("capture epsilon must lie in (0, 1)");
  p.validate();
  switch (p.kind) {
    case PulseKind::Exponential:
      return -std::log(epsilon) * p.width;
    case PulseKind::Gaussian: {
      const double z = boost::math::erfc_inv(epsilon * gaussian_norm_mass(p));
      return std::max(0.0, p.t_offset + p.width * z);
    }
    case PulseKind::Rectangular:
      return p.t_offset + p.width;
  }
  return 0.0;
}

const char* pulse_kind_name(PulseKind kind) {
  switch (kind) {
    case PulseKind::Exponential:
      return "exponential";
    case PulseKind::Gaussian:
      return "gaussian";
    case PulseKind::Rectangular:
      return "rectangular";
  }
  return "?";
}

PulseKind pulse_kind_from_name(const std::string& name) {
  if (name == "exponential") return PulseKind::Exponential;
  if (name == "gaussian") return PulseKind::Gaussian;
  if (name == "rectangular") return PulseKind::Rectangular;
  throw std::invalid_argument("unknown pulse kind '" + name + "'");
}

}  // namespace xkerr
