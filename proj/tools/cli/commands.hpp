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

#ifndef ISAC_CLI_COMMANDS_HPP
#define ISAC_CLI_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace isac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitIterationLimit = 3;

struct SweepArgs {
  std::filesystem::path config;
  int points = 50;
  std::optional<std::filesystem::path> out;  // stdout when unset
  std::string schemes;                       // comma separated, empty for the default set
  std::optional<double> crb_cap;
};

struct PointArgs {
  std::filesystem::path config;
  double gamma = 0.0;
  bool json = false;
  std::optional<std::filesystem::path> out;
};

struct RateSnrArgs {
  std::filesystem::path config;
  double gamma = 0.0;
  std::vector<double> snr_db;
  std::optional<std::filesystem::path> out;
};

struct FixtureArgs {
  std::optional<std::string> emit;  // scenario1 | scenario2
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out;
};

/// Each command returns its process exit code. Reports go to `out`,
/// diagnostics to `err`.
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_point(const PointArgs& args, std::ostream& out, std::ostream& err);
int cmd_rate_vs_snr(const RateSnrArgs& args, std::ostream& out, std::ostream& err);
int cmd_fixture(const FixtureArgs& args, std::ostream& out, std::ostream& err);

}  // namespace isac::cli

#endif  // ISAC_CLI_COMMANDS_HPP
