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

#ifndef ISAC_BASELINES_HPP
#define ISAC_BASELINES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "isac/metrics.hpp"
#include "isac/scenario.hpp"

namespace isac {

/// Points produced by sweeping a power-splitting factor beta over [0, 1].
struct BetaSweep {
  std::vector<double> betas;
  std::vector<CRPoint> points;
  std::vector<std::size_t> pareto;  // indices of non-dominated points
};

/// `count` uniformly spaced values in [0, 1], both ends included.
std::vector<double> default_betas(int count = 201);

/// Straight segment between (CRB_min, R_S) at tau = 0 and (CRB_C, R_max) at
/// tau = 1. Returns nullopt when CRB_C is infinite.
std::optional<std::vector<CRPoint>> time_switching(const CRPoint& rate_max, const CRPoint& crb_min,
                                                   std::span<const double> taus);

/// Equal power: beta P over the r communication subchannels, the rest over
/// the M - r sensing ones. A full-rank channel forces beta = 1.
RVector equal_power_split(int rank, int tx_antennas, double power, double beta);

/// Strongest eigenmode: beta P on subchannel 1, the rest spread over M - 1.
RVector strongest_eigenmode_split(int tx_antennas, double power, double beta);

BetaSweep power_split_ep(const ChannelMatrix& channel, const Scenario& scenario,
                         std::span<const double> betas);
BetaSweep power_split_sem(const ChannelMatrix& channel, const Scenario& scenario,
                          std::span<const double> betas);

/// Indices of points not dominated by any other point (lower-or-equal CRB and
/// higher-or-equal rate, one of them strict). Ascending CRB order.
std::vector<std::size_t> pareto_front(std::span<const CRPoint> points);

enum class SplitKind { kEqualPower, kStrongestEigenmode };

/// Best-rate point of a splitting scheme subject to CRB <= gamma, with beta
/// optimized continuously. Returns nullopt when no beta meets the threshold.
struct SplitOptimum {
  double beta;
  CRPoint point;
};
std::optional<SplitOptimum> best_split(SplitKind kind, const ChannelMatrix& channel,
                                       const Scenario& scenario, CrbThreshold gamma);

}  // namespace isac

#endif  // ISAC_BASELINES_HPP
