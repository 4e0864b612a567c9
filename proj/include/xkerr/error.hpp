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

#include <stdexcept>
#include <string>

namespace xkerr {

// A computed quantity violated an invariant it must satisfy by construction
// (imaginary expectation value, negative variance, trace drift).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-step integration lost an invariant; the message carries the step
// size that was in use.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double dt) : NumericalError(what), dt_(dt) {}
  double dt() const { return dt_; }

 private:
  double dt_;
};

// Parameters fall outside the region where a closed form exists.
class UnsupportedRegime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InsufficientSamples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xkerr
