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

#include "isac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace isac {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kFeasibilitySlack = 1e-12;

struct Evaluation {
  RVector p;
  double rate = 0.0;
  double sum_inv = 0.0;
  double sum_p = 0.0;
  double value = 0.0;
};

double objective(const RVector& p, const RVector& gains, double sigma_c2) {
  double bits = 0.0;
  for (Eigen::Index i = 0; i < gains.size(); ++i) bits += std::log2(1.0 + gains(i) / sigma_c2 * p(i));
  return bits;
}

double inverse_sum(const RVector& p) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p(i) > 0.0)) return kInfinity;
    total += 1.0 / p(i);
  }
  return total;
}

Evaluation evaluate(const RVector& gains, int m, double sigma_c2, double power, double budget,
                    double mu, double v) {
  Evaluation e;
  e.p.resize(m);
  for (int i = 0; i < m; ++i) {
    const double g = i < gains.size() ? gains(i) / sigma_c2 : 0.0;
    e.p(i) = bisect_stationary_root(g, mu, v).value_or(0.0);
  }
  e.rate = objective(e.p, gains, sigma_c2);
  e.sum_inv = inverse_sum(e.p);
  e.sum_p = e.p.sum();
  e.value = e.rate - v * (e.sum_p - power);
  if (mu > 0.0) e.value -= mu * (e.sum_inv - budget);
  return e;
}

// Bisection in log space for a non-increasing function of a positive argument.
double geometric_root(const std::function<double(double)>& f, double start) {
  double lo = start, hi = start;
  for (int i = 0; i < 2000 && f(lo) < 0.0; ++i) lo *= 0.5;
  for (int i = 0; i < 2000 && f(hi) > 0.0; ++i) hi *= 2.0;
  for (int it = 0; it < 300; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::optional<double> bisect_stationary_root(double gain_over_noise, double mu, double v) {
  if (!(v > 0.0)) throw std::invalid_argument("bisect_stationary_root: v must be positive");
  const auto residual = [&](double p) {
    return (gain_over_noise / kLn2) / (1.0 + gain_over_noise * p) + mu / (p * p) - v;
  };
  if (mu == 0.0 && !(gain_over_noise / kLn2 > v)) return std::nullopt;

  double lo = 0.0;
  double hi = std::max(2.0 / (v * kLn2), std::sqrt(2.0 * mu / v));
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double oracle_dual_value(const RVector& gains, int tx_antennas, double sigma_c2, double power,
                         TraceInverseBudget budget, double mu, double v) {
  return evaluate(gains, tx_antennas, sigma_c2, power, budget.value, mu, v).value;
}

OracleResult oracle_dual_grid(const RVector& gains, int tx_antennas, double sigma_c2, double power,
                              TraceInverseBudget budget, int grid_density) {
  const int m = tx_antennas;
  const Eigen::Index r = gains.size();
  const double minimum = static_cast<double>(m) * m / power;
  if (budget.value < minimum * (1.0 - kFeasibilitySlack)) {
    throw std::domain_error("oracle_dual_grid: infeasible CRB budget");
  }
  if (grid_density < 3) throw std::invalid_argument("oracle_dual_grid: grid too coarse");

  OracleResult out;
  if (budget.value <= minimum * (1.0 + kFeasibilitySlack) || r == 0) {
    out.allocation.p = RVector::Constant(m, power / m);
    out.allocation.mu = kInfinity;
    out.allocation.v = kInfinity;
    out.rate = objective(out.allocation.p, gains, sigma_c2);
    out.dual_value = out.rate;
    return out;
  }

  // Grid stage over log10(mu), log10(v).
  const double max_gain = gains.maxCoeff() / sigma_c2;
  double upper = std::log10(10.0 * (max_gain / kLn2 + power * budget.value));
  double lower = -12.0;

  double best_lmu = 0.0, best_lv = 0.0;
  const auto scan = [&](double mu_lo, double mu_hi, double v_lo, double v_hi, bool& on_top_edge) {
    double best = kInfinity;
    int best_i = 0, best_j = 0;
    for (int i = 0; i < grid_density; ++i) {
      const double lmu = mu_lo + (mu_hi - mu_lo) * i / (grid_density - 1);
      for (int j = 0; j < grid_density; ++j) {
        const double lv = v_lo + (v_hi - v_lo) * j / (grid_density - 1);
        const double value =
            evaluate(gains, m, sigma_c2, power, budget.value, std::pow(10.0, lmu), std::pow(10.0, lv)).value;
        if (value < best) {
          best = value;
          best_i = i;
          best_j = j;
          best_lmu = lmu;
          best_lv = lv;
        }
      }
    }
    on_top_edge = best_i == grid_density - 1 || best_j == grid_density - 1;
  };

  bool edge = true;
  for (int expand = 0; expand < 20 && edge; ++expand) {
    scan(lower, upper, lower, upper, edge);
    if (edge) upper += 2.0;
  }
  double half_width = (upper - lower) / 2.0;
  for (int pass = 0; pass < 3; ++pass) {
    half_width /= 10.0;
    const double cmu = best_lmu, cv = best_lv;
    scan(cmu - half_width, cmu + half_width, cv - half_width, cv + half_width, edge);
  }

  // Settle the multipliers: v(mu) meets the power budget exactly and the
  // reduced dual's derivative in mu, budget - sum 1/p, is monotone.
  const auto v_for = [&](double mu) {
    return geometric_root(
        [&](double v) { return evaluate(gains, m, sigma_c2, power, budget.value, mu, v).sum_p - power; },
        std::pow(10.0, best_lv));
  };
  double mu = 0.0;
  double v = 0.0;
  bool slack = false;
  if (r == m) {
    const double v0 = v_for(0.0);
    const Evaluation e0 = evaluate(gains, m, sigma_c2, power, budget.value, 0.0, v0);
    if (e0.sum_inv <= budget.value) {
      slack = true;
      v = v0;
    }
  }
  if (!slack) {
    mu = geometric_root(
        [&](double x) {
          return evaluate(gains, m, sigma_c2, power, budget.value, x, v_for(x)).sum_inv - budget.value;
        },
        std::pow(10.0, best_lmu));
    v = v_for(mu);
  }

  const Evaluation final_eval = evaluate(gains, m, sigma_c2, power, budget.value, mu, v);
  out.allocation.p = final_eval.p;
  out.allocation.mu = mu;
  out.allocation.v = v;
  out.rate = final_eval.rate;
  out.dual_value = final_eval.value;
  return out;
}

OracleResult oracle_primal_grid(const RVector& gains, int tx_antennas, double sigma_c2,
                                double power, TraceInverseBudget budget, int steps) {
  const int m = tx_antennas;
  if (m < 1 || m > 3) throw std::invalid_argument("oracle_primal_grid: only M <= 3 is supported");
  if (steps < m) throw std::invalid_argument("oracle_primal_grid: too few grid steps");

  const double power_limit = power * (1.0 + kFeasibilitySlack);
  const double budget_limit = budget.value * (1.0 + kFeasibilitySlack);
  const auto feasible = [&](const RVector& p) {
    return (p.array() > 0.0).all() && p.sum() <= power_limit && inverse_sum(p) <= budget_limit;
  };

  const double h = power / steps;
  RVector best;
  double best_rate = -kInfinity;
  RVector p(m);
  std::vector<int> k(m, 1);
  // Enumerate positive integer vectors with sum(k) <= steps.
  std::function<void(int, int)> walk = [&](int dim, int used) {
    if (dim == m) {
      for (int i = 0; i < m; ++i) p(i) = k[i] * h;
      if (!feasible(p)) return;
      const double value = objective(p, gains, sigma_c2);
      if (value > best_rate) {
        best_rate = value;
        best = p;
      }
      return;
    }
    for (int kk = 1; used + kk + (m - dim - 1) <= steps; ++kk) {
      k[dim] = kk;
      walk(dim + 1, used + kk);
    }
  };
  walk(0, 0);
  if (best.size() == 0) throw std::domain_error("oracle_primal_grid: no feasible grid point");

  // Pattern search along coordinate and pairwise-exchange directions.
  std::vector<RVector> directions;
  for (int i = 0; i < m; ++i) {
    RVector d = RVector::Zero(m);
    d(i) = 1.0;
    directions.push_back(d);
    directions.push_back(-d);
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      RVector e = RVector::Zero(m);
      e(i) = 1.0;
      e(j) = -1.0;
      directions.push_back(e);
    }
  }
  // A step that only breaks the CRB budget is pulled back onto it by moving
  // mass within another pair, from the larger entry toward the smaller one;
  // sum 1/p falls monotonically along that move, so bisection finds the
  // smallest repair. Without this the search stalls where both constraints
  // are active, since no fixed direction follows the curved boundary.
  const auto repair = [&](const RVector& cand) -> std::optional<RVector> {
    if ((cand.array() <= 0.0).any() || cand.sum() > power_limit) return std::nullopt;
    std::optional<RVector> out;
    double out_rate = -kInfinity;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const int lo_i = cand(a) < cand(b) ? a : b;
        const int hi_i = lo_i == a ? b : a;
        RVector dir = RVector::Zero(m);
        dir(lo_i) = 1.0;
        dir(hi_i) = -1.0;
        double lo = 0.0, hi = 0.5 * (cand(hi_i) - cand(lo_i));
        if (inverse_sum(cand + hi * dir) > budget_limit) continue;
        for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (mid == lo || mid == hi) break;
          (inverse_sum(cand + mid * dir) <= budget_limit ? hi : lo) = mid;
        }
        const RVector fixed = cand + hi * dir;
        if (!feasible(fixed)) continue;
        const double value = objective(fixed, gains, sigma_c2);
        if (value > out_rate) {
          out_rate = value;
          out = fixed;
        }
      }
    }
    return out;
  };

  for (double step = h; step > 1e-15 * power;) {
    bool improved = false;
    for (const RVector& d : directions) {
      RVector cand = best + step * d;
      if (!feasible(cand)) {
        const auto fixed = repair(cand);
        if (!fixed) continue;
        cand = *fixed;
      }
      const double value = objective(cand, gains, sigma_c2);
      if (value > best_rate) {
        best_rate = value;
        best = cand;
        improved = true;
      }
    }
    step = improved ? std::min(2.0 * step, h) : 0.5 * step;
  }

  OracleResult out;
  out.allocation.p = best;
  out.rate = best_rate;
  out.dual_value = kInfinity;
  return out;
}

CMatrix random_unitary(int n, GaussianSource& rng) {
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

CMatrix sample_feasible_covariance(int tx_antennas, double power, TraceInverseBudget budget,
                                   GaussianSource& rng, bool rotate, int max_attempts) {
  const int m = tx_antennas;
  const double minimum = static_cast<double>(m) * m / power;
  if (!(budget.value > minimum)) {
    throw std::domain_error("sample_feasible_covariance: budget must exceed M^2/P");
  }

  // Smallest total power for which the uniform split still meets the budget.
  const double min_scale = minimum / budget.value;
  RVector d;
  bool found = false;
  for (int attempt = 0; attempt < max_attempts && !found; ++attempt) {
    const double scale = min_scale + (1.0 - min_scale) * rng.uniform();
    RVector simplex(m);
    for (int i = 0; i < m; ++i) simplex(i) = -std::log(rng.uniform());
    simplex *= power / simplex.sum();
    double mix = rng.uniform();
    for (int shrink = 0; shrink < 60; ++shrink, mix *= 0.5) {
      d = scale * ((1.0 - mix) * RVector::Constant(m, power / m) + mix * simplex);
      if (inverse_sum(d) <= budget.value && d.sum() <= power) {
        found = true;
        break;
      }
    }
  }
  if (!found) throw std::runtime_error("sample_feasible_covariance: rejection budget exhausted");

  const CMatrix diag = d.cast<std::complex<double>>().asDiagonal();
  if (!rotate) return diag;
  const CMatrix u = random_unitary(m, rng);
  CMatrix q = u * diag * u.adjoint();
  return 0.5 * (q + q.adjoint());
}

}  // namespace isac
