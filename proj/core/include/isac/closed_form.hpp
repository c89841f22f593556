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

#ifndef ISAC_CLOSED_FORM_HPP
#define ISAC_CLOSED_FORM_HPP

#include "isac/metrics.hpp"
#include "isac/scenario.hpp"

namespace isac {

struct SolverDiagnostics {
  int iterations = 0;
  double kkt_residual = 0.0;
  double duality_gap = 0.0;
};

/// Per-subchannel powers in the SVD basis of the channel, with the dual
/// variables of the CRB constraint (mu) and the power constraint (v).
struct PowerAllocation {
  RVector p;
  double mu = 0.0;
  double v = 0.0;
  SolverDiagnostics diagnostics;
};

struct WaterFilling {
  RVector p;  // one entry per gain
  double water_level = 0.0;
};

/// Classic water-filling p_i = (nu - sigma_c2 / gain_i)^+ with sum p = P.
/// The water level is found exactly from the sorted noise floors.
WaterFilling waterfill(const RVector& gains, double sigma_c2, double power);

/// An endpoint of the CRB-rate region together with the covariance attaining it.
struct Endpoint {
  TransmitCovariance covariance;
  RVector p;  // length M, SVD basis
  CRPoint point;
};

/// Rate-maximizing endpoint (CRB_C, R_max). CRB_C is +inf whenever the
/// water-filled covariance is rank deficient.
Endpoint rate_max_point(const ChannelMatrix& channel, const Scenario& scenario);

/// CRB-minimizing endpoint (CRB_min, R_S) attained by Q = (P/M) I.
Endpoint crb_min_point(const ChannelMatrix& channel, const Scenario& scenario);

/// sigma_s2 * Ns * M^2 / (P * L).
double crb_min_value(const Scenario& scenario);

/// Power below which water-filling leaves the weakest of M subchannels dry.
/// Requires one gain per transmit antenna (full column rank); throws
/// std::domain_error otherwise.
double p0_threshold(const RVector& gains, int tx_antennas, double sigma_c2);

/// High-power allocation: the r communication subchannels share
/// P - (M-r)^2 / budget equally and each of the M-r sensing subchannels gets
/// (M-r) / budget. Requires r < M and P > (M-r)^2 / budget.
PowerAllocation asymptotic_allocation(int rank, int tx_antennas, double power,
                                      TraceInverseBudget budget);

}  // namespace isac

#endif  // ISAC_CLOSED_FORM_HPP
