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

#ifndef ISAC_TESTS_FIXTURES_HPP
#define ISAC_TESTS_FIXTURES_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "isac/scenario.hpp"

namespace isac::testing {

std::filesystem::path fixture_dir();

struct Fixture {
  std::string name;
  Scenario scenario;
  ChannelMatrix channel;
};

/// Loads `<fixture_dir>/<relative>.json` and its stored channel.
Fixture load_fixture_case(const std::string& relative);

Fixture scenario1();
Fixture scenario2();

/// The 20 stored battery fixtures b01..b20.
std::vector<Fixture> battery();

/// `count` CRB thresholds spread log-uniformly over the feasible range:
/// CRB_min up to 1.5 CRB_C, or 100 CRB_min when CRB_C is infinite.
std::vector<double> gamma_span(const Fixture& fixture, int count);

}  // namespace isac::testing

#endif  // ISAC_TESTS_FIXTURES_HPP
