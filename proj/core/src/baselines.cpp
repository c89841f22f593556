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

#include "isac/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "isac/closed_form.hpp"
#include "isac/solver.hpp"

namespace isac {

std::vector<double> default_betas(int count) {
  if (count < 2) throw std::invalid_argument("default_betas: need at least two values");
  std::vector<double> betas(count);
  for (int i = 0; i < count; ++i) betas[i] = static_cast<double>(i) / (count - 1);
  return betas;
}

std::optional<std::vector<CRPoint>> time_switching(const CRPoint& rate_max, const CRPoint& crb_min,
                                                   std::span<const double> taus) {
  if (!std::isfinite(rate_max.crb)) return std::nullopt;
  std::vector<CRPoint> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    CRPoint pt;
    pt.scheme = Scheme::kTimeSwitch;
    pt.crb = tau * rate_max.crb + (1.0 - tau) * crb_min.crb;
    pt.rate = tau * rate_max.rate + (1.0 - tau) * crb_min.rate;
    out.push_back(pt);
  }
  return out;
}

RVector equal_power_split(int rank, int tx_antennas, double power, double beta) {
  if (rank >= tx_antennas) beta = 1.0;
  RVector p(tx_antennas);
  p.head(rank).setConstant(beta * power / rank);
  if (rank < tx_antennas) {
    p.tail(tx_antennas - rank).setConstant((1.0 - beta) * power / (tx_antennas - rank));
  }
  return p;
}

RVector strongest_eigenmode_split(int tx_antennas, double power, double beta) {
  RVector p = RVector::Constant(tx_antennas, (1.0 - beta) * power / (tx_antennas - 1));
  p(0) = beta * power;
  return p;
}

namespace {

CRPoint evaluate_split(const ChannelMatrix& channel, const Scenario& scenario, const RVector& p,
                       Scheme scheme) {
  const TransmitCovariance cov = assemble_covariance(channel.V, p, scenario.power);
  CRPoint pt;
  pt.scheme = scheme;
  pt.crb = crb_trace(cov.Q, scenario);
  pt.rate = rate(cov.Q, channel.H, scenario.sigma_c2);
  return pt;
}

}  // namespace

BetaSweep power_split_ep(const ChannelMatrix& channel, const Scenario& scenario,
                         std::span<const double> betas) {
  const int m = static_cast<int>(channel.tx_antennas());
  BetaSweep sweep;
  if (channel.rank >= m) {
    sweep.betas = {1.0};
  } else {
    sweep.betas.assign(betas.begin(), betas.end());
    std::sort(sweep.betas.begin(), sweep.betas.end());
  }
  for (double beta : sweep.betas) {
    const RVector p = equal_power_split(channel.rank, m, scenario.power, beta);
    sweep.points.push_back(evaluate_split(channel, scenario, p, Scheme::kEqualPower));
  }
  sweep.pareto = pareto_front(sweep.points);
  return sweep;
}

BetaSweep power_split_sem(const ChannelMatrix& channel, const Scenario& scenario,
                          std::span<const double> betas) {
  const int m = static_cast<int>(channel.tx_antennas());
  BetaSweep sweep;
  sweep.betas.assign(betas.begin(), betas.end());
  std::sort(sweep.betas.begin(), sweep.betas.end());
  for (double beta : sweep.betas) {
    const RVector p = strongest_eigenmode_split(m, scenario.power, beta);
    sweep.points.push_back(evaluate_split(channel, scenario, p, Scheme::kStrongestEigenmode));
  }
  sweep.pareto = pareto_front(sweep.points);
  return sweep;
}

std::vector<std::size_t> pareto_front(std::span<const CRPoint> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].crb != points[b].crb) return points[a].crb < points[b].crb;
    return points[a].rate > points[b].rate;
  });

  std::vector<std::size_t> front;
  double best_rate = -kInfinity;
  double best_crb = kInfinity;
  for (std::size_t idx : order) {
    const CRPoint& pt = points[idx];
    const bool duplicate = pt.rate == best_rate && pt.crb == best_crb;
    if (pt.rate > best_rate || duplicate) {
      front.push_back(idx);
      best_rate = pt.rate;
      best_crb = pt.crb;
    }
  }
  return front;
}

std::optional<SplitOptimum> best_split(SplitKind kind, const ChannelMatrix& channel,
                                       const Scenario& scenario, CrbThreshold gamma) {
  const int m = static_cast<int>(channel.tx_antennas());
  const int r = channel.rank;
  const RVector gains = channel.gains();
  const double scale = scenario.crb_scale();
  const Scheme scheme =
      kind == SplitKind::kEqualPower ? Scheme::kEqualPower : Scheme::kStrongestEigenmode;

  const std::function<RVector(double)> powers = [&](double beta) {
    return kind == SplitKind::kEqualPower ? equal_power_split(r, m, scenario.power, beta)
                                          : strongest_eigenmode_split(m, scenario.power, beta);
  };
  const auto crb_at = [&](double beta) { return crb_of_powers(powers(beta), scale); };
  const auto rate_at = [&](double beta) { return rate_of_powers(powers(beta), gains, scenario.sigma_c2); };
  const auto make = [&](double beta) {
    SplitOptimum opt{beta, {}};
    opt.point.scheme = scheme;
    opt.point.crb = crb_at(beta);
    opt.point.rate = rate_at(beta);
    opt.point.gamma_target = gamma.value;
    return opt;
  };

  // Tolerate the rounding of the threshold itself at the isotropic point.
  const double limit = gamma.value * (1.0 + 1e-12);

  if (kind == SplitKind::kEqualPower && r >= m) {
    if (crb_at(1.0) > limit) return std::nullopt;
    return make(1.0);
  }

  // The CRB is convex in beta and minimized where the split is uniform.
  const double uniform_beta =
      kind == SplitKind::kEqualPower ? static_cast<double>(r) / m : 1.0 / m;
  const double crb_uniform = crb_at(uniform_beta);
  if (crb_uniform > limit) return std::nullopt;
  // At the feasibility boundary only the uniform split qualifies.
  if (crb_uniform >= gamma.value * (1.0 - 1e-12)) return make(uniform_beta);

  // Away from the uniform split the threshold is applied exactly: the region
  // boundary is steep there, so even a 1e-12 overshoot buys visible rate.
  const auto edge = [&](double inside, double outside) {
    if (crb_at(outside) <= gamma.value) return outside;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (inside + outside);
      if (mid == inside || mid == outside) break;
      (crb_at(mid) <= gamma.value ? inside : outside) = mid;
    }
    return inside;
  };
  const double lo = edge(uniform_beta, 0.0);
  const double hi = edge(uniform_beta, 1.0);

  // The rate is concave in beta; golden-section search over the feasible interval.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = rate_at(x1), f2 = rate_at(x2);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = rate_at(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = rate_at(x1);
    }
  }
  double best_beta = 0.5 * (a + b);
  for (double cand : {lo, hi}) {
    if (rate_at(cand) > rate_at(best_beta)) best_beta = cand;
  }
  return make(best_beta);
}

}  // namespace isac
