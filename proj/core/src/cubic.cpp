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

#include "isac/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isac {

namespace {

// The closed forms lose digits to cancellation; a few Newton steps restore
// them. A step is kept only when it lowers the residual.
double polish(double a, double b, double c, double d, double x) {
  const auto f = [&](double t) { return ((a * t + b) * t + c) * t + d; };
  double fx = f(x);
  for (int it = 0; it < 4 && fx != 0.0; ++it) {
    const double df = (3.0 * a * x + 2.0 * b) * x + c;
    if (df == 0.0) break;
    const double next = x - fx / df;
    const double fn = f(next);
    if (!(std::abs(fn) < std::abs(fx))) break;
    x = next;
    fx = fn;
  }
  return x;
}

}  // namespace

CubicRoots solve_cubic(double a, double b, double c, double d) {
  if (a == 0.0) throw std::invalid_argument("solve_cubic: leading coefficient is zero");

  const double t1 = b / (3.0 * a);
  const double t2 = (27.0 * a * a * d - 9.0 * a * b * c + 2.0 * b * b * b) / (54.0 * a * a * a);
  const double t3 = (3.0 * a * c - b * b) / (9.0 * a * a);
  const double disc = t2 * t2 + t3 * t3 * t3;

  CubicRoots roots;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    roots.values[0] = polish(a, b, c, d, -t1 + std::cbrt(-t2 + s) + std::cbrt(-t2 - s));
    roots.count = 1;
    return roots;
  }

  // Three distinct real roots; t3 < 0 here.
  const double r = std::sqrt(-t3);
  const double cos_arg = std::clamp(-t2 / (r * r * r), -1.0, 1.0);
  const double phi = std::acos(cos_arg);
  for (int k = 0; k < 3; ++k) {
    roots.values[k] = polish(a, b, c, d, 2.0 * r * std::cos((phi + 2.0 * std::numbers::pi * k) / 3.0) - t1);
  }
  roots.count = 3;
  std::sort(roots.values.begin(), roots.values.end());
  return roots;
}

}  // namespace isac
