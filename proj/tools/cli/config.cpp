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

#include "cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace isac::cli {

namespace {

using nlohmann::json;

template <typename T>
T get_number(const json& obj, const char* key) {
  const json& value = obj.at(key);
  if (!value.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!value.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  }
  return value.get<T>();
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

Config parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(doc,
             {"M", "Nc", "Ns", "L", "P", "sigma_c2", "sigma_s2", "Kc", "theta", "seed",
              "fixture_path", "solver"},
             "config");

  Config cfg;
  Scenario& s = cfg.scenario;
  try {
    s.tx_antennas = get_number<int>(doc, "M");
    s.cu_antennas = get_number<int>(doc, "Nc");
    s.sensing_antennas = get_number<int>(doc, "Ns");
    s.cpi_length = get_number<int>(doc, "L");
    s.power = get_number<double>(doc, "P");
    s.sigma_c2 = get_number<double>(doc, "sigma_c2");
    s.sigma_s2 = get_number<double>(doc, "sigma_s2");
    s.theta = get_number<double>(doc, "theta");

    const json& kc = doc.at("Kc");
    if (kc.is_string()) {
      const auto word = kc.get<std::string>();
      if (word != "inf" && word != "infinite") throw ConfigError("'Kc' must be a number or \"inf\"");
      s.rician_factor = kInfinity;
    } else {
      s.rician_factor = get_number<double>(doc, "Kc");
    }
    if (doc.contains("seed")) s.seed = get_number<std::uint64_t>(doc, "seed");
    if (doc.contains("fixture_path")) {
      if (!doc["fixture_path"].is_string()) throw ConfigError("'fixture_path' must be a string");
      std::filesystem::path p = doc["fixture_path"].get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      s.fixture_path = p;
    }

    if (doc.contains("solver")) {
      const json& solver = doc["solver"];
      if (!solver.is_object()) throw ConfigError("'solver' must be an object");
      check_keys(solver, {"kkt_tol", "max_ellipsoid_iters", "dual_box_initial", "rank_tol"},
                 "solver");
      if (solver.contains("kkt_tol")) cfg.settings.kkt_tol = get_number<double>(solver, "kkt_tol");
      if (solver.contains("max_ellipsoid_iters")) {
        cfg.settings.max_ellipsoid_iters = get_number<int>(solver, "max_ellipsoid_iters");
      }
      if (solver.contains("dual_box_initial")) {
        cfg.settings.dual_box_initial = get_number<double>(solver, "dual_box_initial");
      }
      if (solver.contains("rank_tol")) cfg.settings.rank_tol = get_number<double>(solver, "rank_tol");
    }
  } catch (const json::out_of_range& e) {
    throw ConfigError(std::string("missing key: ") + e.what());
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("bad value: ") + e.what());
  }

  try {
    s.validate();
    cfg.settings.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::string dump_config(const Scenario& s) {
  nlohmann::ordered_json doc;
  doc["M"] = s.tx_antennas;
  doc["Nc"] = s.cu_antennas;
  doc["Ns"] = s.sensing_antennas;
  doc["L"] = s.cpi_length;
  doc["P"] = s.power;
  doc["sigma_c2"] = s.sigma_c2;
  doc["sigma_s2"] = s.sigma_s2;
  if (std::isinf(s.rician_factor)) {
    doc["Kc"] = "inf";
  } else {
    doc["Kc"] = s.rician_factor;
  }
  doc["theta"] = s.theta;
  doc["seed"] = s.seed;
  if (s.fixture_path) doc["fixture_path"] = s.fixture_path->string();
  return doc.dump(2) + "\n";
}

unsigned thread_budget() {
  const char* env = std::getenv("ISAC_PARETO_THREADS");
  unsigned requested = 0;
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') requested = static_cast<unsigned>(parsed);
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

}  // namespace isac::cli
