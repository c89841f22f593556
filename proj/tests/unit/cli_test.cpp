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

#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "isac/metrics.hpp"
#include "support/fixtures.hpp"

namespace isac::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "isac_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scenario1_config() { return testing::fixture_dir() / "scenario1.json"; }
fs::path scenario2_config() { return testing::fixture_dir() / "scenario2.json"; }

TEST(CliFormat, FloatFormatting) {
  EXPECT_EQ(format_float(0.0048), "4.800000000000e-3");
  EXPECT_EQ(format_float(27.5), "2.750000000000e1");
  EXPECT_EQ(format_float(1.0), "1.000000000000e0");
  EXPECT_EQ(format_float(-1e-120), "-1.000000000000e-120");
  EXPECT_EQ(format_float(kInfinity), "inf");
  EXPECT_EQ(format_float(-kInfinity), "-inf");
  EXPECT_EQ(format_optional(std::nullopt), "");
  EXPECT_DOUBLE_EQ(std::strtod(format_float(0.1234567890123456).c_str(), nullptr), 0.1234567890123);
}

TEST(CliConfig, ParsesAllFields) {
  const Config c = parse_config(R"({"M": 4, "Nc": 3, "Ns": 2, "L": 50, "P": 10.5,
      "sigma_c2": 0.5, "sigma_s2": 2, "Kc": "inf", "theta": 0.2, "seed": 9,
      "solver": {"kkt_tol": 1e-10, "max_ellipsoid_iters": 300, "dual_box_initial": 5, "rank_tol": 1e-8}})");
  EXPECT_EQ(c.scenario.tx_antennas, 4);
  EXPECT_EQ(c.scenario.cu_antennas, 3);
  EXPECT_EQ(c.scenario.sensing_antennas, 2);
  EXPECT_EQ(c.scenario.cpi_length, 50);
  EXPECT_EQ(c.scenario.power, 10.5);
  EXPECT_TRUE(std::isinf(c.scenario.rician_factor));
  EXPECT_EQ(c.scenario.seed, 9u);
  EXPECT_EQ(c.settings.kkt_tol, 1e-10);
  EXPECT_EQ(c.settings.max_ellipsoid_iters, 300);
  EXPECT_EQ(c.settings.dual_box_initial, 5.0);
  EXPECT_EQ(c.settings.rank_tol, 1e-8);
}

TEST(CliConfig, RejectsBadInput) {
  const std::string base = R"("M": 4, "Nc": 3, "Ns": 2, "L": 50, "P": 10, "sigma_c2": 1, "sigma_s2": 1, "Kc": 3, "theta": 0)";
  EXPECT_NO_THROW(parse_config("{" + base + "}"));
  EXPECT_THROW(parse_config("{" + base + R"(, "Pt": 3})"), ConfigError);            // unknown key
  EXPECT_THROW(parse_config("{" + base + R"(, "solver": {"tol": 1}})"), ConfigError);  // unknown solver key
  EXPECT_THROW(parse_config(R"({"M": 4})"), ConfigError);                           // missing keys
  EXPECT_THROW(parse_config("{" + base + "]"), ConfigError);                         // bad JSON
  EXPECT_THROW(parse_config(R"({"M": 4.5, "Nc": 3, "Ns": 2, "L": 50, "P": 10, "sigma_c2": 1, "sigma_s2": 1, "Kc": 3, "theta": 0})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"M": 4, "Nc": 3, "Ns": 2, "L": 3, "P": 10, "sigma_c2": 1, "sigma_s2": 1, "Kc": 3, "theta": 0})"),
               ConfigError);  // L <= M
  EXPECT_THROW(parse_config(R"({"M": 4, "Nc": 3, "Ns": 2, "L": 50, "P": 10, "sigma_c2": 1, "sigma_s2": 1, "Kc": "big", "theta": 0})"),
               ConfigError);
}

TEST(CliConfig, DumpRoundTrips) {
  Scenario s = Scenario::rank_deficient_preset();
  s.rician_factor = kInfinity;
  const Config c = parse_config(dump_config(s));
  EXPECT_EQ(c.scenario.tx_antennas, s.tx_antennas);
  EXPECT_EQ(c.scenario.theta, s.theta);
  EXPECT_TRUE(std::isinf(c.scenario.rician_factor));
}

TEST(CliSweep, ScenarioOneCsv) {
  const fs::path out = scratch("s1.csv");
  std::ostringstream o, e;
  SweepArgs args{scenario1_config(), 50, out, "", std::nullopt};
  ASSERT_EQ(cmd_sweep(args, o, e), kExitOk) << e.str();
  std::ifstream in(out);
  const auto rows = read_sweep_csv(in);
  ASSERT_EQ(rows.size(), 200u);
  // Sorted by scheme then CRB.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_LE(rows[i - 1].scheme, rows[i].scheme);
    if (rows[i - 1].scheme == rows[i].scheme && !std::isnan(rows[i].crb)) {
      EXPECT_LE(rows[i - 1].crb, rows[i].crb);
    }
  }
  const auto first_opt = std::find_if(rows.begin(), rows.end(), [](auto& r) { return r.scheme == "optimal"; });
  ASSERT_NE(first_opt, rows.end());
  EXPECT_EQ(format_float(first_opt->crb), "4.800000000000e-3");
  EXPECT_EQ(read(out).find("optimal,4.800000000000e-3,4.800000000000e-3,"), read(out).find("optimal,"));
  for (const auto& r : rows) {
    if (r.scheme == "time_switch") {
      EXPECT_EQ(r.status, "not_applicable");
    }
  }
  EXPECT_TRUE(fs::exists(scratch("s1.plot.py")));
  EXPECT_NE(read(scratch("s1.plot.py")).find("rate_bps_hz"), std::string::npos);
}

TEST(CliSweep, ScenarioTwoReachesFiniteCorner) {
  std::ostringstream o, e;
  SweepArgs args{scenario2_config(), 20, std::nullopt, "optimal,waterfill", std::nullopt};
  ASSERT_EQ(cmd_sweep(args, o, e), kExitOk);
  std::istringstream in(o.str());
  const auto rows = read_sweep_csv(in);
  double wf_crb = 0, wf_rate = 0, last_crb = 0, last_rate = 0;
  for (const auto& r : rows) {
    if (r.scheme == "waterfill") {
      wf_crb = r.crb;
      wf_rate = r.rate;
    } else {
      last_crb = r.crb;
      last_rate = r.rate;
    }
  }
  EXPECT_TRUE(std::isfinite(wf_crb));
  EXPECT_NEAR(last_crb, wf_crb, 1e-6);
  EXPECT_NEAR(last_rate, wf_rate, 1e-6);
}

TEST(CliSweep, ConfigErrorsExitOne) {
  std::ostringstream o, e;
  EXPECT_EQ(cmd_sweep({testing::fixture_dir() / "missing.json", 50, std::nullopt, "", std::nullopt}, o, e),
            kExitConfig);
  EXPECT_EQ(cmd_sweep({scenario1_config(), 50, std::nullopt, "optimal,bogus", std::nullopt}, o, e),
            kExitConfig);
  EXPECT_EQ(cmd_sweep({scenario1_config(), 1, std::nullopt, "", std::nullopt}, o, e), kExitConfig);
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << R"({"M": 8, "Nc": 6, "Ns": 12, "L": 200, "P": 800, "sigma_c2": 1,
      "sigma_s2": 1, "Kc": 100, "theta": 0.5, "typo": 1})";
  EXPECT_EQ(cmd_sweep({bad, 50, std::nullopt, "", std::nullopt}, o, e), kExitConfig);
}

TEST(CliPoint, InfeasibleGammaNamesCrbMin) {
  std::ostringstream o, e;
  EXPECT_EQ(cmd_point({scenario1_config(), 0.003, false, std::nullopt}, o, e), kExitInfeasible);
  EXPECT_NE(e.str().find("CRB_min = 4.800000000000e-3"), std::string::npos);
}

TEST(CliPoint, CrbMinGivesUniformAllocation) {
  std::ostringstream o, e;
  ASSERT_EQ(cmd_point({scenario1_config(), 0.0048, true, std::nullopt}, o, e), kExitOk);
  const auto doc = nlohmann::json::parse(o.str());
  for (const auto& p : doc["p"]) EXPECT_NEAR(p.get<double>(), 100.0, 1e-9);
}

TEST(CliPoint, JsonRoundTripReproducesCsv) {
  const fs::path out = scratch("point.csv");
  std::ostringstream o, e;
  ASSERT_EQ(cmd_point({scenario1_config(), 0.1, true, out}, o, e), kExitOk);
  const auto doc = nlohmann::json::parse(o.str());
  EXPECT_EQ(doc["status"], "optimal");
  std::vector<double> pv = doc["p"].get<std::vector<double>>();
  ASSERT_EQ(pv.size(), 8u);
  // Power ordering visible in the report.
  for (int i = 1; i < 6; ++i) EXPECT_GE(pv[i - 1], pv[i]);
  EXPECT_GE(pv[5], pv[6]);
  EXPECT_NEAR(pv[6], pv[7], 1e-9);
  EXPECT_GT(pv[7], 0.0);

  std::ifstream in(out);
  const auto rows = read_sweep_csv(in);
  ASSERT_EQ(rows.size(), 1u);
  const auto f = testing::scenario1();
  const RVector p = Eigen::Map<RVector>(pv.data(), 8);
  const double r = rate_of_powers(p, f.channel.gains(), f.scenario.sigma_c2);
  const double c = crb_of_powers(p, f.scenario.crb_scale());
  EXPECT_NEAR(r, rows[0].rate, 1e-10 * rows[0].rate);
  EXPECT_NEAR(c, rows[0].crb, 1e-10 * rows[0].crb);
}

TEST(CliPoint, TextReportListsAllocation) {
  std::ostringstream o, e;
  ASSERT_EQ(cmd_point({scenario1_config(), 0.0152, false, std::nullopt}, o, e), kExitOk);
  for (const char* key : {"status", "crb", "rate_bps_hz", "mu", "kkt_residual", "p1 ", "p8 "}) {
    EXPECT_NE(o.str().find(key), std::string::npos) << key;
  }
}

TEST(CliRateVsSnr, InfeasibleRowsAreAnnotated) {
  std::ostringstream o, e;
  RateSnrArgs args{scenario1_config(), 0.1, {0.0, 29.0309, 60.0}, std::nullopt};
  ASSERT_EQ(cmd_rate_vs_snr(args, o, e), kExitOk);
  std::istringstream in(o.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "snr_db,power,gamma,optimal_rate,ep_rate,sem_rate,ep_beta,sem_beta,status");
  std::getline(in, line);
  EXPECT_NE(line.find("infeasible"), std::string::npos);
  std::getline(in, line);
  EXPECT_NE(line.find("optimal"), std::string::npos);
}

TEST(CliRateVsSnr, MatchesSweepAtScenarioPower) {
  std::ostringstream o, e;
  // 10 log10(800) dB
  RateSnrArgs args{scenario1_config(), 0.0152, {10.0 * std::log10(800.0)}, std::nullopt};
  ASSERT_EQ(cmd_rate_vs_snr(args, o, e), kExitOk);
  std::istringstream in(o.str());
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  std::vector<std::string> f;
  std::stringstream ss(line);
  for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
  std::ostringstream po, pe;
  ASSERT_EQ(cmd_point({scenario1_config(), 0.0152, true, std::nullopt}, po, pe), kExitOk);
  const double point_rate = nlohmann::json::parse(po.str())["rate_bps_hz"];
  EXPECT_NEAR(std::stod(f[3]), point_rate, 1e-9 * point_rate);
  EXPECT_LE(std::stod(f[4]), std::stod(f[3]));
  EXPECT_LE(std::stod(f[5]), std::stod(f[3]));
}

TEST(CliFixture, EmitIsDeterministic) {
  const fs::path a = scratch("fa.csv"), b = scratch("fb.csv"), c = scratch("fc.csv");
  std::ostringstream o, e;
  ASSERT_EQ(cmd_fixture({"scenario1", std::nullopt, 5, a}, o, e), kExitOk);
  EXPECT_NE(o.str().find("rank 6"), std::string::npos);
  EXPECT_NE(o.str().find("6x8"), std::string::npos);
  ASSERT_EQ(cmd_fixture({"scenario1", std::nullopt, 5, b}, o, e), kExitOk);
  EXPECT_EQ(read(a), read(b));
  ASSERT_EQ(cmd_fixture({"scenario1", std::nullopt, 6, c}, o, e), kExitOk);
  EXPECT_NE(read(a), read(c));
  std::ostringstream o2;
  ASSERT_EQ(cmd_fixture({"scenario2", std::nullopt, std::nullopt, a}, o2, e), kExitOk);
  EXPECT_NE(o2.str().find("rank 6"), std::string::npos);
  EXPECT_NE(o2.str().find("6x6"), std::string::npos);
  EXPECT_EQ(read(a), read(testing::fixture_dir() / "scenario2.csv"));
  EXPECT_EQ(cmd_fixture({"scenario3", std::nullopt, std::nullopt, a}, o, e), kExitConfig);
  EXPECT_EQ(cmd_fixture({std::nullopt, std::nullopt, std::nullopt, a}, o, e), kExitConfig);
}

}  // namespace
}  // namespace isac::cli
