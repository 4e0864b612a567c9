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

#include "xkerr/qutrit.hpp"

namespace xkerr {

enum class PulseKind { Exponential, Gaussian, Rectangular };

// Single-photon envelope f(t), normalised so that the integral of |f|^2 over
// [0, inf) is exactly one. width is the characteristic time tau: the decay
// time of the exponential, the standard width of the Gaussian and the
// duration of the rectangle. t_offset is the Gaussian centre or the start of
// the rectangle.
struct PulseShape {
  PulseKind kind = PulseKind::Exponential;
  double width = 1.0;
  double t_offset = 0.0;

  static PulseShape exponential(double gamma_con);
  // tau = 1/gamma_con, centred at 3 tau.
  static PulseShape gaussian(double gamma_con);
  // tau = 1/gamma_con starting at t = 0.
  static PulseShape rectangular(double gamma_con);
  static PulseShape of_kind(PulseKind kind, double gamma_con);

  void validate() const;
  // Times at which f is discontinuous (rectangle edges).
  std::vector<double> breakpoints() const;
};

// Which one-sided limit to take at a discontinuity.
enum class Side { Left, Right };

// f(t). At a rectangle edge the value is that of the closed support.
cplx amplitude(const PulseShape& p, double t);
cplx amplitude(const PulseShape& p, double t, Side side);

// Integral of |f|^2 over [0, t].
double captured_fraction(const PulseShape& p, double t);

// Smallest T with captured_fraction(p, T) >= 1 - epsilon.
double capture_horizon(const PulseShape& p, double epsilon);

const char* pulse_kind_name(PulseKind kind);
PulseKind pulse_kind_from_name(const std::string& name);

}  // namespace xkerr
