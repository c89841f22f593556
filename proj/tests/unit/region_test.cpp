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

#include <cmath>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

namespace isac {
namespace {

std::vector<SweepRow> rows_of(const SweepResult& r, Scheme scheme) {
  std::vector<SweepRow> out;
  for (const auto& row : r.rows) {
    if (row.scheme == scheme) out.push_back(row);
  }
  return out;
}

TEST(Region, GeometricGrid) {
  const auto g = geometric_grid(1.0, 1000.0, 4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g.front(), 1.0);
  EXPECT_DOUBLE_EQ(g.back(), 1000.0);
  EXPECT_NEAR(g[1], 10.0, 1e-12);
  EXPECT_NEAR(g[2], 100.0, 1e-10);
}

TEST(Region, RankDeficientSweepIsCappedAndMonotone) {
  const auto f = testing::scenario1();
  const SweepResult r = sweep(f.channel, f.scenario);
  EXPECT_TRUE(r.capped);
  EXPECT_NEAR(r.grid.back(), 100.0 * 0.0048, 1e-15);
  const auto opt = rows_of(r, Scheme::kOptimal);
  ASSERT_EQ(opt.size(), 50u);
  EXPECT_NEAR(opt.front().crb, 0.0048, 1e-8);
  EXPECT_NEAR(opt.front().rate, r.crb_min.point.rate, 1e-8);
  for (std::size_t i = 1; i < opt.size(); ++i) {
    EXPECT_EQ(opt[i].status, "optimal");
    EXPECT_GE(opt[i].rate, opt[i - 1].rate);
    EXPECT_GE(opt[i].crb, opt[i - 1].crb);
  }
  for (const auto& row : rows_of(r, Scheme::kTimeSwitch)) EXPECT_EQ(row.status, "not_applicable");
}

TEST(Region, FullRankSweepEndsAtRateMaxCorner) {
  const auto f = testing::scenario2();
  const SweepResult r = sweep(f.channel, f.scenario);
  EXPECT_FALSE(r.capped);
  const auto opt = rows_of(r, Scheme::kOptimal);
  EXPECT_NEAR(opt.back().crb, r.rate_max.point.crb, 1e-6);
  EXPECT_NEAR(opt.back().rate, r.rate_max.point.rate, 1e-6);
  EXPECT_NEAR(opt.front().crb, 0.0027, 1e-8);
  for (const auto& row : rows_of(r, Scheme::kTimeSwitch)) EXPECT_EQ(row.status, "ok");
}

TEST(Region, EqualGainsCollapseTheFrontier) {
  // Orthogonal channel with identical singular values at high power.
  Scenario s = Scenario::full_rank_preset();
  s.tx_antennas = 4;
  s.cu_antennas = 4;
  s.power = 1e4;
  const ChannelMatrix ch = ChannelMatrix::from_matrix(CMatrix::Identity(4, 4) * 2.0);
  SweepOptions opt;
  opt.points = 10;
  opt.schemes = {Scheme::kOptimal};
  const SweepResult r = sweep(ch, s, opt);
  double lo = kInfinity, hi = -kInfinity;
  for (const auto& row : r.rows) {
    lo = std::min(lo, row.rate);
    hi = std::max(hi, row.rate);
  }
  EXPECT_LE(hi - lo, 1e-6);
}

TEST(Region, ThreadedSweepIsDeterministic) {
  const auto f = testing::scenario1();
  SweepOptions one;
  one.points = 20;
  SweepOptions many = one;
  many.threads = 4;
  const SweepResult a = sweep(f.channel, f.scenario, one);
  const SweepResult b = sweep(f.channel, f.scenario, many);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].scheme, b.rows[i].scheme);
    if (std::isnan(a.rows[i].rate)) continue;
    EXPECT_EQ(a.rows[i].rate, b.rows[i].rate);
    EXPECT_EQ(a.rows[i].crb, b.rows[i].crb);
  }
}

TEST(Region, EndpointSchemesAndOracleRejection) {
  const auto f = testing::scenario2();
  SweepOptions opt;
  opt.schemes = {Scheme::kWaterfill, Scheme::kCrbMin};
  const SweepResult r = sweep(f.channel, f.scenario, opt);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].rate, r.rate_max.point.rate);
  EXPECT_EQ(r.rows[1].crb, r.crb_min.point.crb);
  opt.schemes = {Scheme::kOracle};
  EXPECT_THROW(sweep(f.channel, f.scenario, opt), std::invalid_argument);
  opt.schemes = {Scheme::kOptimal};
  opt.points = 1;
  EXPECT_THROW(sweep(f.channel, f.scenario, opt), std::invalid_argument);
}

}  // namespace
}  // namespace isac
