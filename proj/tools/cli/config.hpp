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

#ifndef ISAC_CLI_CONFIG_HPP
#define ISAC_CLI_CONFIG_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "isac/scenario.hpp"
#include "isac/solver.hpp"

namespace isac::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  Scenario scenario;
  SolverSettings settings;
};

/// Parses a scenario config. Keys: M, Nc, Ns, L, P, sigma_c2, sigma_s2, Kc
/// (number or "inf"), theta (radians), optional seed and fixture_path
/// (relative to the config file), optional "solver" object with kkt_tol,
/// max_ellipsoid_iters, dual_box_initial, rank_tol. Unknown keys are errors.
Config parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
Config load_config(const std::filesystem::path& path);

/// Serializes a scenario back into the config format.
std::string dump_config(const Scenario& scenario);

/// Threads for sweeps from ISAC_PARETO_THREADS (unset or 0: hardware concurrency).
unsigned thread_budget();

}  // namespace isac::cli

#endif  // ISAC_CLI_CONFIG_HPP
