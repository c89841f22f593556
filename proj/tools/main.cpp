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

#include <exception>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    values.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument(item);
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace isac::cli;

  CLI::App app{"Pareto boundary of the CRB-rate region for MIMO ISAC links"};
  app.require_subcommand(1);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Frontier and benchmark curves as CSV");
  sweep_cmd->add_option("config", sweep.config, "Scenario JSON")->required();
  sweep_cmd->add_option("--points", sweep.points, "Gamma grid size")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "CSV path (a .plot.py script is written beside it)");
  sweep_cmd->add_option("--schemes", sweep.schemes,
                        "Comma list from optimal,ep,sem,time_switch,waterfill,crbmin");
  sweep_cmd->add_option("--crb-cap", sweep.crb_cap, "Upper end of the Gamma grid");

  PointArgs point;
  auto* point_cmd = app.add_subcommand("point", "Single CRB-constrained solve");
  point_cmd->add_option("config", point.config, "Scenario JSON")->required();
  point_cmd->add_option("--gamma", point.gamma, "CRB threshold")->required();
  point_cmd->add_flag("--json", point.json, "Machine-readable report");
  point_cmd->add_option("--out", point.out, "Also write a one-row CSV");

  RateSnrArgs snr;
  std::string snr_list;
  auto* snr_cmd = app.add_subcommand("rate-vs-snr", "Rates of all schemes across transmit SNRs");
  snr_cmd->add_option("config", snr.config, "Scenario JSON")->required();
  snr_cmd->add_option("--gamma", snr.gamma, "CRB threshold")->required();
  snr_cmd->add_option("--snr-list", snr_list, "Comma list of SNRs in dB, 10 log10(P / sigma_c2)")
      ->required();
  snr_cmd->add_option("--out", snr.out, "CSV path");

  FixtureArgs fixture;
  auto* fixture_cmd = app.add_subcommand("fixture", "Generate and store a channel matrix");
  auto* emit = fixture_cmd->add_option("--emit", fixture.emit, "scenario1 or scenario2");
  fixture_cmd->add_option("--config", fixture.config, "Scenario JSON")->excludes(emit);
  fixture_cmd->add_option("--seed", fixture.seed, "Override the scenario seed");
  fixture_cmd->add_option("--out", fixture.out, "Fixture CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(sweep, std::cout, std::cerr);
    if (*point_cmd) return cmd_point(point, std::cout, std::cerr);
    if (*snr_cmd) {
      try {
        snr.snr_db = parse_list(snr_list);
      } catch (const std::exception&) {
        std::cerr << "config error: bad --snr-list '" << snr_list << "'\n";
        return kExitConfig;
      }
      return cmd_rate_vs_snr(snr, std::cout, std::cerr);
    }
    if (*fixture_cmd) return cmd_fixture(fixture, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return kExitConfig;
}
