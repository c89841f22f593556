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

#include "isac/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace isac {

WaterFilling waterfill(const RVector& gains, double sigma_c2, double power) {
  const Eigen::Index n = gains.size();
  if (n == 0) throw std::invalid_argument("waterfill: no subchannels");
  if (!(power > 0.0)) throw std::invalid_argument("waterfill: power must be positive");
  if ((gains.array() <= 0.0).any()) throw std::invalid_argument("waterfill: gains must be positive");

  std::vector<double> floors(n);
  for (Eigen::Index i = 0; i < n; ++i) floors[i] = sigma_c2 / gains(i);
  std::vector<double> sorted = floors;
  std::sort(sorted.begin(), sorted.end());

  // Largest k whose water level stays above the k-th floor. Prefix sums run
  // forward so that dropping a huge floor never cancels against small ones.
  std::vector<double> prefix(n + 1, 0.0);
  std::partial_sum(sorted.begin(), sorted.end(), prefix.begin() + 1);
  double level = 0.0;
  for (Eigen::Index k = n; k >= 1; --k) {
    level = (power + prefix[k]) / static_cast<double>(k);
    if (level > sorted[k - 1]) break;
  }

  WaterFilling out;
  out.water_level = level;
  out.p.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.p(i) = std::max(level - floors[i], 0.0);
  return out;
}

double crb_min_value(const Scenario& scenario) {
  const double m = scenario.tx_antennas;
  return scenario.crb_scale() * m * m / scenario.power;
}

Endpoint rate_max_point(const ChannelMatrix& channel, const Scenario& scenario) {
  const int m = static_cast<int>(channel.tx_antennas());
  const RVector gains = channel.gains();
  const WaterFilling wf = waterfill(gains, scenario.sigma_c2, scenario.power);

  Endpoint out;
  out.p = RVector::Zero(m);
  out.p.head(wf.p.size()) = wf.p;
  out.covariance.Q = channel.V * out.p.cast<std::complex<double>>().asDiagonal() * channel.V.adjoint();
  out.covariance.budget = scenario.power;
  out.point.scheme = Scheme::kWaterfill;
  out.point.crb = crb_trace(out.covariance.Q, scenario);
  out.point.rate = rate(out.covariance.Q, channel.H, scenario.sigma_c2);
  return out;
}

Endpoint crb_min_point(const ChannelMatrix& channel, const Scenario& scenario) {
  const int m = static_cast<int>(channel.tx_antennas());
  const double share = scenario.power / m;
  const RVector gains = channel.gains();

  Endpoint out;
  out.p = RVector::Constant(m, share);
  out.covariance.Q = CMatrix::Identity(m, m) * share;
  out.covariance.budget = scenario.power;
  out.point.scheme = Scheme::kCrbMin;
  out.point.crb = crb_min_value(scenario);
  double bits = 0.0;
  for (Eigen::Index i = 0; i < gains.size(); ++i) {
    bits += std::log2(1.0 + gains(i) * share / scenario.sigma_c2);
  }
  out.point.rate = bits;
  return out;
}

double p0_threshold(const RVector& gains, int tx_antennas, double sigma_c2) {
  if (gains.size() != tx_antennas) {
    throw std::domain_error("p0_threshold: channel must have full column rank");
  }
  const double weakest = gains.minCoeff();
  if (!(weakest > 0.0)) throw std::domain_error("p0_threshold: zero subchannel gain");
  double total = 0.0;
  for (Eigen::Index i = 0; i < gains.size(); ++i) total += sigma_c2 / weakest - sigma_c2 / gains(i);
  return total;
}

PowerAllocation asymptotic_allocation(int rank, int tx_antennas, double power,
                                      TraceInverseBudget budget) {
  if (rank >= tx_antennas) {
    throw std::domain_error("asymptotic_allocation: full-rank channels converge to water-filling");
  }
  if (rank < 1) throw std::domain_error("asymptotic_allocation: rank must be positive");
  if (!(budget.value > 0.0)) throw std::domain_error("asymptotic_allocation: budget must be positive");
  const double sensing_count = tx_antennas - rank;
  const double sensing_power = sensing_count * sensing_count / budget.value;
  if (!(power > sensing_power)) {
    throw std::domain_error("asymptotic_allocation: power below (M-r)^2 / budget");
  }

  PowerAllocation out;
  out.p.resize(tx_antennas);
  out.p.head(rank).setConstant((power - sensing_power) / rank);
  out.p.tail(tx_antennas - rank).setConstant(sensing_count / budget.value);
  return out;
}

}  // namespace isac
