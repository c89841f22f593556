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

#include "isac/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

namespace isac {
namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("isac_scenario_" + name);
}

TEST(Scenario, PresetsValidate) {
  EXPECT_NO_THROW(Scenario::rank_deficient_preset().validate());
  EXPECT_NO_THROW(Scenario::full_rank_preset().validate());
  const Scenario s = Scenario::rank_deficient_preset();
  EXPECT_EQ(s.tx_antennas, 8);
  EXPECT_EQ(s.cu_antennas, 6);
  EXPECT_DOUBLE_EQ(s.theta, std::numbers::pi / 6);
  EXPECT_DOUBLE_EQ(s.crb_scale(), 12.0 / 200.0);
}

TEST(Scenario, RejectsOutOfRangeFields) {
  const auto bad = [](auto mutate) {
    Scenario s = Scenario::rank_deficient_preset();
    mutate(s);
    return s;
  };
  EXPECT_THROW(bad([](Scenario& s) { s.tx_antennas = 1; }).validate(), ScenarioError);
  EXPECT_THROW(bad([](Scenario& s) { s.cu_antennas = 1; }).validate(), ScenarioError);
  EXPECT_THROW(bad([](Scenario& s) { s.sensing_antennas = 0; }).validate(), ScenarioError);
  EXPECT_THROW(bad([](Scenario& s) { s.cpi_length = 8; }).validate(), ScenarioError);
  EXPECT_THROW(bad([](Scenario& s) { s.power = 0.0; }).validate(), ScenarioError);
  EXPECT_THROW(bad([](Scenario& s) { s.sigma_c2 = -1.0; }).validate(), ScenarioError);
  EXPECT_THROW(bad([](Scenario& s) { s.sigma_s2 = 0.0; }).validate(), ScenarioError);
  EXPECT_THROW(bad([](Scenario& s) { s.rician_factor = -0.5; }).validate(), ScenarioError);
  EXPECT_NO_THROW(bad([](Scenario& s) { s.rician_factor = kInfinity; }).validate());
}

TEST(Scenario, SteeringVectorHasUnitModulusAndLinearPhase) {
  const CVector a = steering_vector(5, 0.4);
  ASSERT_EQ(a.size(), 5);
  for (int m = 0; m < 5; ++m) {
    EXPECT_NEAR(std::abs(a(m)), 1.0, 1e-15);
    EXPECT_NEAR(std::arg(a(m) * std::conj(std::polar(1.0, std::numbers::pi * m * std::sin(0.4)))),
                0.0, 1e-12);
  }
  const CVector broadside = steering_vector(4, 0.0);
  EXPECT_LT((broadside - CVector::Ones(4)).norm(), 1e-15);
}

TEST(Scenario, LineOfSightChannelHasRankOne) {
  Scenario s = Scenario::rank_deficient_preset();
  s.rician_factor = kInfinity;
  const ChannelMatrix ch = rician_channel(s);
  EXPECT_EQ(ch.rank, 1);
  // ||a_r a_t^T|| = sqrt(Nc * M)
  EXPECT_NEAR(ch.singular_values(0), std::sqrt(48.0), 1e-12);
}

TEST(Scenario, RayleighSquareChannelIsFullRank) {
  Scenario s = Scenario::rank_deficient_preset();
  s.tx_antennas = 4;
  s.cu_antennas = 4;
  s.rician_factor = 0.0;
  s.seed = 7;
  const ChannelMatrix ch = rician_channel(s);
  EXPECT_EQ(ch.rank, 4);
  EXPECT_GT(ch.singular_values(3), 1e-9 * ch.singular_values(0));
}

TEST(Scenario, ChannelIsDeterministicInSeed) {
  const Scenario s = Scenario::full_rank_preset();
  EXPECT_EQ(rician_channel(s).H, rician_channel(s).H);
  Scenario other = s;
  other.seed = s.seed + 1;
  EXPECT_NE(rician_channel(s).H, rician_channel(other).H);
}

TEST(Scenario, SvdReconstructsChannel) {
  const ChannelMatrix ch = rician_channel(Scenario::rank_deficient_preset());
  const Eigen::Index n = ch.singular_values.size();
  CMatrix sigma = CMatrix::Zero(ch.H.rows(), ch.H.cols());
  sigma.diagonal().head(n) = ch.singular_values.cast<std::complex<double>>();
  EXPECT_LT((ch.U * sigma * ch.V.adjoint() - ch.H).norm(), 1e-12 * ch.H.norm());
  EXPECT_LT((ch.V.adjoint() * ch.V - CMatrix::Identity(8, 8)).norm(), 1e-12);
  EXPECT_EQ(ch.rank, 6);
  EXPECT_EQ(ch.gains().size(), 6);
  for (Eigen::Index i = 1; i < n; ++i) EXPECT_GE(ch.singular_values(i - 1), ch.singular_values(i));
}

TEST(Scenario, GaussianSourceMoments) {
  GaussianSource rng(42);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto z = rng.complex_normal();
    sum += z.real();
    sum2 += std::norm(z);
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n, 1.0, 0.01);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Scenario, FixtureRoundTripIsExact) {
  const ChannelMatrix ch = rician_channel(Scenario::full_rank_preset());
  const auto path = temp_path("roundtrip.csv");
  save_fixture(ch.H, path);
  EXPECT_EQ(load_fixture(path), ch.H);
  std::filesystem::remove(path);
}

TEST(Scenario, MalformedFixturesThrow) {
  const auto path = temp_path("bad.csv");
  const auto write = [&](const std::string& text) {
    std::ofstream(path) << text;
  };
  write("2,2\n1,0,2,0\n");
  EXPECT_THROW(load_fixture(path), FixtureError);  // truncated
  write("2\n1,0\n");
  EXPECT_THROW(load_fixture(path), FixtureError);  // bad header
  write("1,2\n1,0,x,0\n");
  EXPECT_THROW(load_fixture(path), FixtureError);  // not a number
  write("1,2\n1,0,2\n");
  EXPECT_THROW(load_fixture(path), FixtureError);  // odd column count
  EXPECT_THROW(load_fixture(temp_path("missing.csv")), FixtureError);
  std::filesystem::remove(path);
}

TEST(Scenario, FixtureDimensionsMustMatchScenario) {
  Scenario s = Scenario::rank_deficient_preset();
  s.fixture_path = testing::fixture_dir() / "scenario2.csv";  // 6x6, scenario wants 6x8
  EXPECT_THROW(rician_channel(s), FixtureError);
}

TEST(Scenario, StoredFixturesHaveExpectedRank) {
  const auto s1 = testing::scenario1();
  EXPECT_EQ(s1.channel.H.rows(), 6);
  EXPECT_EQ(s1.channel.H.cols(), 8);
  EXPECT_EQ(s1.channel.rank, 6);
  const auto s2 = testing::scenario2();
  EXPECT_EQ(s2.channel.H.rows(), 6);
  EXPECT_EQ(s2.channel.H.cols(), 6);
  EXPECT_EQ(s2.channel.rank, 6);
  // Stored scenario fixtures are the seeded draws themselves.
  Scenario fresh = s1.scenario;
  fresh.fixture_path.reset();
  EXPECT_EQ(rician_channel(fresh).H, s1.channel.H);
}

}  // namespace
}  // namespace isac
