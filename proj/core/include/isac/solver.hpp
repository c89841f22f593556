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

#ifndef ISAC_SOLVER_HPP
#define ISAC_SOLVER_HPP

#include <array>
#include <optional>
#include <string_view>

#include "isac/closed_form.hpp"
#include "isac/metrics.hpp"
#include "isac/scenario.hpp"

namespace isac {

struct SolverSettings {
  double kkt_tol = 1e-9;
  int max_ellipsoid_iters = 2000;
  /// Side of the initial dual box [0, B]^2; derived from the problem when unset.
  std::optional<double> dual_box_initial;
  double rank_tol = kDefaultRankTol;
  /// Relative duality gap required for an optimal status.
  double gap_tol = 1e-8;

  void validate() const;
};

enum class SolveStatus { kOptimal, kInfeasible, kIterationLimit };

std::string_view status_name(SolveStatus status);

/// Optimality residuals of an allocation for the power-allocation problem
///   max sum_i log2(1 + g_i p_i)  s.t.  sum 1/p_i <= budget,  sum p_i <= P.
struct KktReport {
  double stationarity = 0.0;      // max |d Lagrangian / d p_i|, sensing: |p_i - sqrt(mu/v)|
  double crb_violation = 0.0;     // max(0, sum 1/p - budget)
  double power_violation = 0.0;   // max(0, sum p - P)
  double crb_slackness = 0.0;     // |mu * (sum 1/p - budget)|
  double power_slackness = 0.0;   // |v * (sum p - P)|
  double relative_gap = 0.0;      // |g(mu, v) - rate| / max(1, rate)

  /// Largest residual after normalizing each by its tolerance scale.
  double worst(double budget, double power) const;
  bool satisfied(double kkt_tol, double gap_tol, double budget, double power) const;
};

/// Allocation result in the SVD basis, independent of the channel's singular vectors.
struct AllocationSolve {
  PowerAllocation allocation;
  SolveStatus status = SolveStatus::kIterationLimit;
  KktReport kkt;
};

struct SolveReport {
  PowerAllocation allocation;
  TransmitCovariance covariance;
  CRPoint achieved;
  SolveStatus status = SolveStatus::kIterationLimit;
  KktReport kkt;
};

/// True iff a budget on tr(Q^-1) is attainable with M antennas and power P,
/// i.e. budget >= M^2 / P (up to a 1e-12 relative margin).
bool feasibility_check(int tx_antennas, double power, TraceInverseBudget budget);

/// Unique positive root in p of
///   (1/ln2) * g / (1 + g p) + mu / p^2 - v = 0,   g = lambda^2 / sigma_c2,
/// obtained from the equivalent cubic v p^3 + (v/g - 1/ln2) p^2 - mu p - mu/g = 0
/// and refined by safeguarded Newton steps. A zero gain reduces the
/// condition to sqrt(mu / v). Returns nullopt when mu = 0 and the water
/// level 1/(v ln2) does not exceed 1/g (inactive subchannel).
std::optional<double> cubic_stationary_root(double gain_over_noise, double mu, double v);

/// Left-hand side of the stationarity condition above.
double stationarity_residual(double gain_over_noise, double mu, double v, double p);

/// Lagrangian maximizer at (mu, v): M entries, the first gains.size() from
/// the cubic root (zero when inactive), the rest sqrt(mu / v).
RVector inner_allocation(const RVector& gains, int tx_antennas, double sigma_c2, double mu, double v);

/// Subgradient of the dual function: [-(sum 1/p - budget), -(sum p - P)].
std::array<double, 2> dual_subgradient(const RVector& p, TraceInverseBudget budget, double power);

/// g(mu, v) evaluated at the inner maximizer.
double dual_function(const RVector& gains, int tx_antennas, double sigma_c2, double power,
                     TraceInverseBudget budget, double mu, double v);

KktReport check_kkt(const RVector& gains, double sigma_c2, double power, TraceInverseBudget budget,
                    const PowerAllocation& allocation);

/// Solves the diagonal power-allocation problem for the given gains
/// (lambda_i^2, i <= r) over M subchannels.
AllocationSolve solve_allocation(const RVector& gains, int tx_antennas, double sigma_c2,
                                 double power, TraceInverseBudget budget,
                                 const SolverSettings& settings = {});

/// CRB-constrained rate maximization over transmit covariances.
SolveReport solve_p1(const ChannelMatrix& channel, const Scenario& scenario, CrbThreshold gamma,
                     const SolverSettings& settings = {});

/// Vc diag(p) Vc^H.
TransmitCovariance assemble_covariance(const CMatrix& Vc, const RVector& p, double budget);

/// Range-space and null-space parts of Vc diag(p) Vc^H for a rank-r channel.
struct CovarianceSplit {
  CMatrix communication;  // first r singular vectors
  CMatrix sensing;        // remaining M - r
};
CovarianceSplit split_covariance(const CMatrix& Vc, const RVector& p, int rank);

}  // namespace isac

#endif  // ISAC_SOLVER_HPP
