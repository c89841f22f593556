// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The isac-pareto Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ISAC_CLI_CSV_HPP
#define ISAC_CLI_CSV_HPP

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "isac/region.hpp"

namespace isac::cli {

inline constexpr std::string_view kSweepHeader =
    "scheme,gamma_target,crb,rate_bps_hz,mu,v,iterations,kkt_residual,status";

/// Scientific notation with 12 digits after the point and an unpadded
/// exponent, e.g. 4.800000000000e-3. Infinities print as inf / -inf.
std::string format_float(double x);
std::string format_optional(const std::optional<double>& x);

/// Orders rows by scheme name, then CRB ascending (NaN last).
void sort_rows(std::vector<SweepRow>& rows);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Parsed form of one sweep CSV line; empty fields come back as nullopt.
struct CsvRow {
  std::string scheme;
  std::optional<double> gamma_target;
  double crb = 0.0;
  double rate = 0.0;
  std::optional<double> mu;
  std::optional<double> v;
  std::optional<int> iterations;
  std::optional<double> kkt_residual;
  std::string status;
};

/// Reads a file written by write_sweep_csv. Throws std::runtime_error on a bad header or row.
std::vector<CsvRow> read_sweep_csv(std::istream& in);

/// Generic matplotlib script that draws `csv_name` (one curve per scheme).
std::string plot_script(std::string_view csv_name, std::string_view title);

}  // namespace isac::cli

#endif  // ISAC_CLI_CSV_HPP
