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

#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "isac/baselines.hpp"
#include "isac/closed_form.hpp"
#include "isac/region.hpp"
#include "isac/solver.hpp"

namespace isac::cli {

namespace {

std::vector<Scheme> parse_scheme_list(const std::string& text) {
  std::vector<Scheme> schemes;
  std::istringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    const auto scheme = parse_scheme(name);
    if (!scheme || *scheme == Scheme::kOracle) {
      throw ConfigError("unknown scheme '" + name + "'");
    }
    schemes.push_back(*scheme);
  }
  if (schemes.empty()) schemes = SweepOptions{}.schemes;
  return schemes;
}

// Writes through a temporary so a failed run never leaves a half-written file.
void write_file(const std::filesystem::path& path, const std::string& contents) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << contents;
    if (!f) throw std::runtime_error("write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

// Shared loading of config plus channel; fixture and scenario errors count as config errors.
struct Loaded {
  Config config;
  ChannelMatrix channel;
};

Loaded load(const std::filesystem::path& path) {
  Config cfg = load_config(path);
  try {
    ChannelMatrix channel = rician_channel(cfg.scenario);
    if (cfg.settings.rank_tol != kDefaultRankTol) {
      channel = ChannelMatrix::from_matrix(channel.H, cfg.settings.rank_tol);
    }
    return {std::move(cfg), std::move(channel)};
  } catch (const FixtureError& e) {
    throw ConfigError(e.what());
  } catch (const ScenarioError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  Loaded loaded;
  SweepOptions options;
  try {
    loaded = load(args.config);
    if (args.points < 2) throw ConfigError("--points must be at least 2");
    options.points = args.points;
    options.schemes = parse_scheme_list(args.schemes);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  options.crb_cap = args.crb_cap;
  options.settings = loaded.config.settings;
  options.threads = thread_budget();

  SweepResult result = sweep(loaded.channel, loaded.config.scenario, options);
  sort_rows(result.rows);

  std::ostringstream csv;
  write_sweep_csv(csv, result.rows);
  if (args.out) {
    write_file(*args.out, csv.str());
    auto script = *args.out;
    script.replace_extension(".plot.py");
    write_file(script, plot_script(args.out->filename().string(), "C-R region"));
    err << "wrote " << result.rows.size() << " rows to " << args.out->string() << " and "
        << script.string() << '\n';
  } else {
    out << csv.str();
  }
  if (result.capped) {
    err << "note: CRB_C is infinite; grid capped at " << format_float(result.grid.back())
        << ", rate tends to R_max = " << format_float(result.rate_max.point.rate) << '\n';
  }

  int solved = 0;
  for (const auto& row : result.rows) {
    if (row.status == "optimal" || row.status == "ok") ++solved;
  }
  if (solved == 0) {
    err << "no feasible point in the sweep\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_point(const PointArgs& args, std::ostream& out, std::ostream& err) {
  Loaded loaded;
  try {
    loaded = load(args.config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const Scenario& scenario = loaded.config.scenario;
  const double crb_min = crb_min_value(scenario);
  if (!(args.gamma > 0.0) ||
      !feasibility_check(scenario.tx_antennas, scenario.power,
                         to_trace_budget(CrbThreshold{args.gamma}, scenario))) {
    err << "infeasible: gamma " << format_float(args.gamma) << " is below CRB_min = "
        << format_float(crb_min) << '\n';
    return kExitInfeasible;
  }

  const SolveReport rep =
      solve_p1(loaded.channel, scenario, CrbThreshold{args.gamma}, loaded.config.settings);
  const PowerAllocation& a = rep.allocation;

  if (args.json) {
    nlohmann::ordered_json doc;
    doc["status"] = std::string(status_name(rep.status));
    doc["gamma_target"] = args.gamma;
    doc["crb"] = number(rep.achieved.crb);
    doc["rate_bps_hz"] = number(rep.achieved.rate);
    doc["crb_min"] = crb_min;
    doc["rank"] = loaded.channel.rank;
    doc["mu"] = number(a.mu);
    doc["v"] = number(a.v);
    doc["p"] = std::vector<double>(a.p.data(), a.p.data() + a.p.size());
    doc["iterations"] = a.diagnostics.iterations;
    doc["kkt"] = {{"stationarity", number(rep.kkt.stationarity)},
                  {"crb_violation", number(rep.kkt.crb_violation)},
                  {"power_violation", number(rep.kkt.power_violation)},
                  {"crb_slackness", number(rep.kkt.crb_slackness)},
                  {"power_slackness", number(rep.kkt.power_slackness)},
                  {"relative_gap", number(rep.kkt.relative_gap)}};
    out << doc.dump(2) << '\n';
  } else {
    out << "status        " << status_name(rep.status) << '\n'
        << "gamma         " << format_float(args.gamma) << '\n'
        << "crb           " << format_float(rep.achieved.crb) << '\n'
        << "rate_bps_hz   " << format_float(rep.achieved.rate) << '\n'
        << "mu            " << format_float(a.mu) << '\n'
        << "v             " << format_float(a.v) << '\n'
        << "iterations    " << a.diagnostics.iterations << '\n'
        << "kkt_residual  " << format_float(a.diagnostics.kkt_residual) << '\n'
        << "duality_gap   " << format_float(a.diagnostics.duality_gap) << '\n';
    for (Eigen::Index i = 0; i < a.p.size(); ++i) {
      out << "p" << (i + 1) << (i + 1 < 10 ? "            " : "           ")
          << format_float(a.p(i)) << (i < loaded.channel.rank ? "" : "  (sensing)") << '\n';
    }
  }

  if (args.out) {
    SweepRow row;
    row.scheme = Scheme::kOptimal;
    row.gamma_target = args.gamma;
    row.crb = rep.achieved.crb;
    row.rate = rep.achieved.rate;
    row.mu = a.mu;
    row.v = a.v;
    row.iterations = a.diagnostics.iterations;
    row.kkt_residual = a.diagnostics.kkt_residual;
    row.status = std::string(status_name(rep.status));
    std::ostringstream csv;
    write_sweep_csv(csv, {row});
    write_file(*args.out, csv.str());
  }

  switch (rep.status) {
    case SolveStatus::kOptimal:
      return kExitOk;
    case SolveStatus::kInfeasible:
      return kExitInfeasible;
    case SolveStatus::kIterationLimit:
      return kExitIterationLimit;
  }
  return kExitIterationLimit;
}

int cmd_rate_vs_snr(const RateSnrArgs& args, std::ostream& out, std::ostream& err) {
  Loaded loaded;
  try {
    loaded = load(args.config);
    if (args.snr_db.empty()) throw ConfigError("--snr-list is empty");
    if (!(args.gamma > 0.0)) throw ConfigError("--gamma must be positive");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::ostringstream csv;
  csv << "snr_db,power,gamma,optimal_rate,ep_rate,sem_rate,ep_beta,sem_beta,status\n";
  for (double snr : args.snr_db) {
    Scenario s = loaded.config.scenario;
    s.power = s.sigma_c2 * std::pow(10.0, snr / 10.0);
    csv << format_float(snr) << ',' << format_float(s.power) << ',' << format_float(args.gamma)
        << ',';
    if (!feasibility_check(s.tx_antennas, s.power, to_trace_budget(CrbThreshold{args.gamma}, s))) {
      csv << ",,,,,infeasible\n";
      err << "snr " << snr << " dB: gamma below CRB_min = " << format_float(crb_min_value(s))
          << ", skipped\n";
      continue;
    }
    const SolveReport rep =
        solve_p1(loaded.channel, s, CrbThreshold{args.gamma}, loaded.config.settings);
    const auto ep = best_split(SplitKind::kEqualPower, loaded.channel, s, CrbThreshold{args.gamma});
    const auto sem =
        best_split(SplitKind::kStrongestEigenmode, loaded.channel, s, CrbThreshold{args.gamma});
    csv << format_float(rep.achieved.rate) << ','
        << (ep ? format_float(ep->point.rate) : std::string()) << ','
        << (sem ? format_float(sem->point.rate) : std::string()) << ','
        << (ep ? format_float(ep->beta) : std::string()) << ','
        << (sem ? format_float(sem->beta) : std::string()) << ',' << status_name(rep.status)
        << '\n';
  }

  if (args.out) {
    write_file(*args.out, csv.str());
  } else {
    out << csv.str();
  }
  return kExitOk;
}

int cmd_fixture(const FixtureArgs& args, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  try {
    if (args.emit.has_value() == args.config.has_value()) {
      throw ConfigError("give exactly one of --emit or --config");
    }
    if (args.emit) {
      if (*args.emit == "scenario1") {
        scenario = Scenario::rank_deficient_preset();
      } else if (*args.emit == "scenario2") {
        scenario = Scenario::full_rank_preset();
      } else {
        throw ConfigError("unknown scenario '" + *args.emit + "'");
      }
    } else {
      scenario = load_config(*args.config).scenario;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  scenario.fixture_path.reset();
  if (args.seed) scenario.seed = *args.seed;

  const ChannelMatrix channel = rician_channel(scenario);
  save_fixture(channel.H, args.out);

  out << "fixture " << args.out.string() << " (" << channel.H.rows() << "x" << channel.H.cols()
      << ", seed " << scenario.seed << ")\n";
  out << "rank " << channel.rank << '\n';
  out << "singular_values";
  for (Eigen::Index i = 0; i < channel.singular_values.size(); ++i) {
    out << ' ' << format_float(channel.singular_values(i));
  }
  out << '\n';
  return kExitOk;
}

}  // namespace isac::cli
