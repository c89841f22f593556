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

#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cli/config.hpp"
#include "isac/closed_form.hpp"
#include "isac/region.hpp"

namespace isac::testing {

std::filesystem::path fixture_dir() { return ISAC_FIXTURE_DIR; }

Fixture load_fixture_case(const std::string& relative) {
  const auto cfg = cli::load_config(fixture_dir() / (relative + ".json"));
  Fixture f{std::filesystem::path(relative).filename().string(), cfg.scenario, {}};
  f.channel = rician_channel(f.scenario);
  return f;
}

Fixture scenario1() { return load_fixture_case("scenario1"); }
Fixture scenario2() { return load_fixture_case("scenario2"); }

std::vector<Fixture> battery() {
  std::vector<Fixture> out;
  for (int i = 1; i <= 20; ++i) {
    char name[16];
    std::snprintf(name, sizeof name, "battery/b%02d", i);
    out.push_back(load_fixture_case(name));
  }
  return out;
}

std::vector<double> gamma_span(const Fixture& f, int count) {
  const double lo = crb_min_value(f.scenario);
  const double crb_c = rate_max_point(f.channel, f.scenario).point.crb;
  const double hi = std::isfinite(crb_c) ? 1.5 * crb_c : 100.0 * lo;
  return geometric_grid(lo, hi, count);
}

}  // namespace isac::testing
