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

#include "isac/region.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "isac/baselines.hpp"

namespace isac {

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("geometric_grid: need at least two points");
  if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("geometric_grid: need 0 < lo <= hi");
  std::vector<double> grid(count);
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(ratio * i / (count - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

namespace {

SweepRow optimal_row(const ChannelMatrix& channel, const Scenario& scenario, double gamma,
                     const SolverSettings& settings) {
  SweepRow row;
  row.scheme = Scheme::kOptimal;
  row.gamma_target = gamma;
  try {
    const SolveReport rep = solve_p1(channel, scenario, CrbThreshold{gamma}, settings);
    row.status = std::string(status_name(rep.status));
    row.crb = rep.achieved.crb;
    row.rate = rep.achieved.rate;
    row.mu = rep.allocation.mu;
    row.v = rep.allocation.v;
    row.iterations = rep.allocation.diagnostics.iterations;
    row.kkt_residual = rep.allocation.diagnostics.kkt_residual;
    row.p = rep.allocation.p;
  } catch (const std::exception& e) {
    row.status = "error";
  }
  return row;
}

SweepRow split_row(SplitKind kind, const ChannelMatrix& channel, const Scenario& scenario,
                   double gamma) {
  SweepRow row;
  row.scheme = kind == SplitKind::kEqualPower ? Scheme::kEqualPower : Scheme::kStrongestEigenmode;
  row.gamma_target = gamma;
  const auto best = best_split(kind, channel, scenario, CrbThreshold{gamma});
  if (!best) {
    row.status = "infeasible";
    return row;
  }
  row.status = "ok";
  row.crb = best->point.crb;
  row.rate = best->point.rate;
  const int m = static_cast<int>(channel.tx_antennas());
  row.p = kind == SplitKind::kEqualPower
              ? equal_power_split(channel.rank, m, scenario.power, best->beta)
              : strongest_eigenmode_split(m, scenario.power, best->beta);
  return row;
}

}  // namespace

SweepResult sweep(const ChannelMatrix& channel, const Scenario& scenario,
                  const SweepOptions& options) {
  if (options.points < 2) throw std::invalid_argument("sweep: need at least two points");

  SweepResult result;
  result.rate_max = rate_max_point(channel, scenario);
  result.crb_min = crb_min_point(channel, scenario);
  const double crb_min = result.crb_min.point.crb;
  const double crb_c = result.rate_max.point.crb;

  double upper = crb_c;
  if (options.crb_cap) upper = std::min(upper, *options.crb_cap);
  if (!std::isfinite(crb_c)) {
    result.capped = true;
    if (!options.crb_cap) upper = 100.0 * crb_min;
  }
  upper = std::max(upper, crb_min);
  result.grid = geometric_grid(crb_min, upper, options.points);
  const std::size_t n = result.grid.size();

  for (Scheme scheme : options.schemes) {
    std::vector<SweepRow> rows(n);
    switch (scheme) {
      case Scheme::kOptimal: {
        unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
        threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n));
        std::atomic<std::size_t> next{0};
        const auto worker = [&] {
          for (std::size_t i = next++; i < n; i = next++) {
            rows[i] = optimal_row(channel, scenario, result.grid[i], options.settings);
          }
        };
        if (threads == 1) {
          worker();
        } else {
          std::vector<std::thread> pool;
          for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
          for (auto& th : pool) th.join();
        }
        break;
      }
      case Scheme::kEqualPower:
      case Scheme::kStrongestEigenmode: {
        const SplitKind kind =
            scheme == Scheme::kEqualPower ? SplitKind::kEqualPower : SplitKind::kStrongestEigenmode;
        for (std::size_t i = 0; i < n; ++i) rows[i] = split_row(kind, channel, scenario, result.grid[i]);
        break;
      }
      case Scheme::kTimeSwitch: {
        for (std::size_t i = 0; i < n; ++i) {
          SweepRow& row = rows[i];
          row.scheme = Scheme::kTimeSwitch;
          row.gamma_target = result.grid[i];
          if (!std::isfinite(crb_c)) {
            row.status = "not_applicable";
            row.crb = std::nan("");
            row.rate = std::nan("");
            continue;
          }
          const double span = crb_c - crb_min;
          const double tau = span > 0.0 ? std::clamp((result.grid[i] - crb_min) / span, 0.0, 1.0) : 1.0;
          const double taus[] = {tau};
          const auto pts = time_switching(result.rate_max.point, result.crb_min.point, taus);
          row.status = "ok";
          row.crb = pts->front().crb;
          row.rate = pts->front().rate;
        }
        break;
      }
      case Scheme::kWaterfill:
      case Scheme::kCrbMin: {
        const Endpoint& ep = scheme == Scheme::kWaterfill ? result.rate_max : result.crb_min;
        rows.resize(1);
        rows[0].scheme = scheme;
        rows[0].crb = ep.point.crb;
        rows[0].rate = ep.point.rate;
        rows[0].status = "ok";
        rows[0].p = ep.p;
        break;
      }
      case Scheme::kOracle:
        throw std::invalid_argument("sweep: the oracle is not a sweep scheme");
    }
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  }
  return result;
}

}  // namespace isac
