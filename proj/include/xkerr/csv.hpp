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
#include <string>
#include <vector>

namespace xkerr {

// %.17g, which round-trips every double.
std::string format_double(double x);

// One writer per artifact. Cells are written as given; numbers should go
// through format_double.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row(std::vector<std::string> cells);
  const std::vector<std::string>& header() const { return header_; }
  std::size_t size() const { return rows_.size(); }
  std::string str() const;
  // Writes atomically through a temporary file; throws std::runtime_error.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Column contracts of the experiment artifacts.
namespace csv_schema {
inline const std::vector<std::string> polarisation = {"t", "f_abs2", "y_expect"};
inline const std::vector<std::string> snr_beta = {"beta", "mean_s1", "sigma_s", "snr", "method"};
inline const std::vector<std::string> histogram = {"bin_lo", "bin_hi", "count_n0", "count_n1"};
inline const std::vector<std::string> detuning_map = {"delta_b", "delta_c", "snr"};
inline const std::vector<std::string> transmission = {"delta", "t_re", "t_im", "t_abs2"};
inline const std::vector<std::string> cascade = {"n", "snr_n"};
inline const std::vector<std::string> fourlevel = {"t", "pop4", "pop3", "diff"};
inline const std::vector<std::string> ratio = {"ratio", "beta_opt", "snr_opt"};
inline const std::vector<std::string> squeeze = {"r_db", "snr"};
inline const std::vector<std::string> ensemble = {"n", "snr_base", "snr_rescaled", "abs_diff"};
}  // namespace csv_schema

// Splits a CSV file produced by CsvTable (no quoting) into rows of cells.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace xkerr
