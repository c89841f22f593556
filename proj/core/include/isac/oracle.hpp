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

#ifndef ISAC_ORACLE_HPP
#define ISAC_ORACLE_HPP

#include <optional>

#include "isac/closed_form.hpp"
#include "isac/metrics.hpp"
#include "isac/scenario.hpp"

namespace isac {

// Reference solvers for the diagonal power-allocation problem. They share
// no numerical machinery with solve_allocation: only grids and bisection.

struct OracleResult {
  PowerAllocation allocation;
  double rate = 0.0;        // objective at allocation.p
  double dual_value = 0.0;  // g(mu, v); an upper bound on any feasible rate
};

/// Positive root of the stationarity condition by plain bisection; nullopt
/// for an inactive subchannel (mu = 0 and water level below the floor).
std::optional<double> bisect_stationary_root(double gain_over_noise, double mu, double v);

/// Dual function evaluated with the bisection inner solver.
double oracle_dual_value(const RVector& gains, int tx_antennas, double sigma_c2, double power,
                         TraceInverseBudget budget, double mu, double v);

/// Minimizes the dual over a logarithmic (mu, v) grid, refines it three
/// times (each pass zooming 10x around the incumbent), then settles the
/// multipliers by nested bisection on the power and CRB constraints.
OracleResult oracle_dual_grid(const RVector& gains, int tx_antennas, double sigma_c2, double power,
                              TraceInverseBudget budget, int grid_density = 60);

/// Exhaustive search over a uniform grid of allocations with sum p <= P and
/// sum 1/p <= budget, followed by pattern-search polishing. M <= 3 only.
OracleResult oracle_primal_grid(const RVector& gains, int tx_antennas, double sigma_c2,
                                double power, TraceInverseBudget budget, int steps);

/// Haar-distributed unitary from the QR factorization of a complex Gaussian matrix.
CMatrix random_unitary(int n, GaussianSource& rng);

/// Random positive-definite, generally non-diagonal Qt with tr(Qt) <= P and
/// tr(Qt^-1) <= budget, built as U diag(d) U^H from a feasible diagonal d.
/// Requires budget > M^2 / P. Throws std::runtime_error when the rejection
/// budget runs out.
CMatrix sample_feasible_covariance(int tx_antennas, double power, TraceInverseBudget budget,
                                   GaussianSource& rng, bool rotate = true,
                                   int max_attempts = 1000);

}  // namespace isac

#endif  // ISAC_ORACLE_HPP
