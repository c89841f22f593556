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

#ifndef ISAC_REGION_HPP
#define ISAC_REGION_HPP

#include <optional>
#include <string>
#include <vector>

#include "isac/closed_form.hpp"
#include "isac/metrics.hpp"
#include "isac/scenario.hpp"
#include "isac/solver.hpp"

namespace isac {

/// One row of a frontier sweep. Fields that do not apply to a scheme stay empty.
struct SweepRow {
  Scheme scheme = Scheme::kOptimal;
  std::optional<double> gamma_target;
  double crb = kInfinity;
  double rate = 0.0;
  std::optional<double> mu;
  std::optional<double> v;
  std::optional<int> iterations;
  std::optional<double> kkt_residual;
  std::string status;
  RVector p;  // allocation in the SVD basis, when the scheme has one
};

struct SweepOptions {
  int points = 50;
  /// Upper end of the Gamma grid; defaults to CRB_C, or 100 * CRB_min when CRB_C is infinite.
  std::optional<double> crb_cap;
  std::vector<Scheme> schemes = {Scheme::kOptimal, Scheme::kEqualPower,
                                 Scheme::kStrongestEigenmode, Scheme::kTimeSwitch};
  SolverSettings settings;
  /// Worker threads for the per-Gamma solves; 0 picks the hardware concurrency.
  unsigned threads = 1;
};

struct SweepResult {
  Endpoint rate_max;
  Endpoint crb_min;
  std::vector<double> grid;
  /// True when CRB_C is infinite and the grid stops at a display cap instead.
  bool capped = false;
  /// Grouped by scheme in option order, each group in grid order.
  std::vector<SweepRow> rows;
};

/// `count` log-spaced values from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int count);

/// Optimal frontier and benchmark curves on a shared geometric Gamma grid.
/// Solver failures are recorded in the row status; the sweep never aborts.
SweepResult sweep(const ChannelMatrix& channel, const Scenario& scenario,
                  const SweepOptions& options = {});

}  // namespace isac

#endif  // ISAC_REGION_HPP
