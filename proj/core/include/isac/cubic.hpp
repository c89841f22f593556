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

#ifndef ISAC_CUBIC_HPP
#define ISAC_CUBIC_HPP

#include <array>
#include <cstddef>

namespace isac {

struct CubicRoots {
  std::array<double, 3> values{};
  std::size_t count = 0;

  const double* begin() const { return values.data(); }
  const double* end() const { return values.data() + count; }
};

/// Real roots of a x^3 + b x^2 + c x + d with a != 0, ascending.
///
/// Uses the depressed form y^3 + 3 t3 y + 2 t2 = 0 with x = y - b / (3a).
/// A non-negative discriminant t2^2 + t3^3 takes Cardano's radical form; a
/// negative one (three real roots) takes the trigonometric form.
CubicRoots solve_cubic(double a, double b, double c, double d);

}  // namespace isac

#endif  // ISAC_CUBIC_HPP
