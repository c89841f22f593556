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

#include "isac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "isac/cubic.hpp"

namespace isac {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kBoundaryMargin = 1e-12;

struct DualEval {
  RVector p;
  double value = 0.0;
  double rate = 0.0;
  double crb_excess = 0.0;    // sum 1/p - budget
  double power_excess = 0.0;  // sum p - P
};

double sum_inverse(const RVector& p) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p(i) > 0.0)) return kInfinity;
    total += 1.0 / p(i);
  }
  return total;
}

DualEval evaluate_dual(const RVector& gains, int m, double sigma_c2, double power, double budget,
                       double mu, double v) {
  DualEval e;
  e.p = inner_allocation(gains, m, sigma_c2, mu, v);
  e.rate = rate_of_powers(e.p, gains, sigma_c2);
  e.crb_excess = sum_inverse(e.p) - budget;
  e.power_excess = e.p.sum() - power;
  e.value = e.rate - v * e.power_excess;
  if (mu > 0.0) e.value -= mu * e.crb_excess;
  return e;
}

// Derivatives of the inner maximizer with respect to (mu, v).
struct Sensitivity {
  double dp_dmu;
  double dp_dv;
};

Sensitivity inner_sensitivity(double gain_over_noise, double mu, double v, double p) {
  if (gain_over_noise == 0.0) return {p / (2.0 * mu), -p / (2.0 * v)};
  const double denom = 1.0 + gain_over_noise * p;
  const double fp = -(gain_over_noise * gain_over_noise / kLn2) / (denom * denom) -
                    2.0 * mu / (p * p * p);
  return {-(1.0 / (p * p)) / fp, 1.0 / fp};
}

double scaled_residual(const DualEval& e, double budget, double power) {
  return std::hypot(e.crb_excess / std::max(1.0, budget), e.power_excess / std::max(1.0, power));
}

// Newton iteration on grad g(mu, v) = 0 from a point the ellipsoid phase
// already placed near the dual optimum. The dual is smooth for mu, v > 0.
int newton_polish(const RVector& gains, int m, double sigma_c2, double power, double budget,
                  double& mu, double& v, int max_iters) {
  const Eigen::Index r = gains.size();
  DualEval cur = evaluate_dual(gains, m, sigma_c2, power, budget, mu, v);
  int iters = 0;
  for (; iters < max_iters; ++iters) {
    const double res = scaled_residual(cur, budget, power);
    if (!(res > 1e-15)) break;

    double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double p = cur.p(i);
      const double g = i < r ? gains(i) / sigma_c2 : 0.0;
      const Sensitivity s = inner_sensitivity(g, mu, v, p);
      j11 += -s.dp_dmu / (p * p);
      j12 += -s.dp_dv / (p * p);
      j21 += s.dp_dmu;
      j22 += s.dp_dv;
    }
    const double det = j11 * j22 - j12 * j21;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) break;
    const double dmu = -(j22 * cur.crb_excess - j12 * cur.power_excess) / det;
    const double dv = -(-j21 * cur.crb_excess + j11 * cur.power_excess) / det;

    bool accepted = false;
    for (double t = 1.0; t > 1e-12; t *= 0.5) {
      const double mu_next = mu + t * dmu;
      const double v_next = v + t * dv;
      if (!(mu_next > 0.0) || !(v_next > 0.0)) continue;
      DualEval next = evaluate_dual(gains, m, sigma_c2, power, budget, mu_next, v_next);
      if (scaled_residual(next, budget, power) < (1.0 - 1e-4 * t) * res) {
        mu = mu_next;
        v = v_next;
        cur = std::move(next);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return iters;
}

struct EllipsoidResult {
  double mu;
  double v;
  int iterations;
};

// Central-cut ellipsoid method on g(mu, v) over mu > 0, v > 0. Iterates
// outside the positive quadrant receive a feasibility cut.
EllipsoidResult ellipsoid_search(const RVector& gains, int m, double sigma_c2, double power,
                                 double budget, double box, int max_iters) {
  Eigen::Vector2d center(box / 2.0, box / 2.0);
  Eigen::Matrix2d shape = Eigen::Matrix2d::Identity() * (box * box / 2.0);

  EllipsoidResult best{center(0), center(1), 0};
  double best_value = kInfinity;

  int it = 0;
  for (; it < max_iters; ++it) {
    Eigen::Vector2d cut;
    const double mu = center(0);
    const double v = center(1);
    bool objective_cut = false;
    if (!(mu > 0.0)) {
      cut = {-1.0, 0.0};
    } else if (!(v > 0.0)) {
      cut = {0.0, -1.0};
    } else {
      const DualEval e = evaluate_dual(gains, m, sigma_c2, power, budget, mu, v);
      if (e.value < best_value) {
        best_value = e.value;
        best.mu = mu;
        best.v = v;
      }
      cut = {-e.crb_excess, -e.power_excess};
      objective_cut = true;
      if (!std::isfinite(cut(0)) || !std::isfinite(cut(1))) {
        // Vanishing sensing power: the CRB term dominates, push mu up.
        cut = {-1.0, 0.0};
        objective_cut = false;
      }
    }

    const double width = std::sqrt(cut.dot(shape * cut));
    if (!(width > 0.0) || !std::isfinite(width)) break;
    if (objective_cut && width <= 1e-13 * std::max(1.0, std::abs(best_value))) break;

    const Eigen::Vector2d step = shape * cut / width;
    center -= step / 3.0;
    shape = (4.0 / 3.0) * (shape - (2.0 / 3.0) * step * step.transpose());
    shape = 0.5 * (shape + shape.transpose()).eval();
  }
  best.iterations = it;
  return best;
}

AllocationSolve boundary_solution(int m, double power) {
  AllocationSolve out;
  out.allocation.p = RVector::Constant(m, power / m);
  // The feasible set is a single point; the dual optimum is not attained.
  out.allocation.mu = kInfinity;
  out.allocation.v = kInfinity;
  out.status = SolveStatus::kOptimal;
  return out;
}

}  // namespace

void SolverSettings::validate() const {
  if (!(kkt_tol > 0.0)) throw std::invalid_argument("kkt_tol must be positive");
  if (max_ellipsoid_iters < 1) throw std::invalid_argument("max_ellipsoid_iters must be positive");
  if (dual_box_initial && !(*dual_box_initial > 0.0)) {
    throw std::invalid_argument("dual_box_initial must be positive");
  }
  if (!(rank_tol > 0.0)) throw std::invalid_argument("rank_tol must be positive");
  if (!(gap_tol > 0.0)) throw std::invalid_argument("gap_tol must be positive");
}

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

double KktReport::worst(double budget, double power) const {
  const double slack_scale = std::max({1.0, budget, power});
  return std::max({stationarity, crb_violation / std::max(1.0, budget),
                   power_violation / std::max(1.0, power), crb_slackness / slack_scale,
                   power_slackness / slack_scale});
}

bool KktReport::satisfied(double kkt_tol, double gap_tol, double budget, double power) const {
  return worst(budget, power) <= kkt_tol && relative_gap <= gap_tol;
}

bool feasibility_check(int tx_antennas, double power, TraceInverseBudget budget) {
  const double minimum = static_cast<double>(tx_antennas) * tx_antennas / power;
  return budget.value >= minimum * (1.0 - kBoundaryMargin);
}

double stationarity_residual(double gain_over_noise, double mu, double v, double p) {
  return (gain_over_noise / kLn2) / (1.0 + gain_over_noise * p) + mu / (p * p) - v;
}

std::optional<double> cubic_stationary_root(double gain_over_noise, double mu, double v) {
  if (!(v > 0.0)) throw std::invalid_argument("cubic_stationary_root: v must be positive");
  if (!(mu >= 0.0)) throw std::invalid_argument("cubic_stationary_root: mu must be non-negative");
  if (!(gain_over_noise >= 0.0)) throw std::invalid_argument("cubic_stationary_root: negative gain");

  if (gain_over_noise == 0.0) {
    if (mu == 0.0) return std::nullopt;
    return std::sqrt(mu / v);
  }
  const double floor = 1.0 / gain_over_noise;
  if (mu == 0.0) {
    // The cubic degenerates to p^2 (v p + b): the only candidate is -b / v.
    const double p = 1.0 / (v * kLn2) - floor;
    if (!(p > 0.0)) return std::nullopt;
    return p;
  }

  const double a = v;
  const double b = v * floor - 1.0 / kLn2;
  const double c = -mu;
  const double d = -mu * floor;
  const CubicRoots roots = solve_cubic(a, b, c, d);
  // Exactly one root is positive; it is the largest real root.
  double p = *std::max_element(roots.begin(), roots.end());

  // The residual is strictly decreasing in p > 0, positive near 0 and
  // negative beyond hi, so Newton can be kept inside a shrinking bracket.
  double lo = 0.0;
  double hi = std::max(2.0 / (v * kLn2), std::sqrt(2.0 * mu / v));
  if (!(p > lo && p < hi)) p = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double f = stationarity_residual(gain_over_noise, mu, v, p);
    if (f == 0.0) break;
    if (f > 0.0) lo = p; else hi = p;
    const double denom = 1.0 + gain_over_noise * p;
    const double fp = -(gain_over_noise * gain_over_noise / kLn2) / (denom * denom) -
                      2.0 * mu / (p * p * p);
    double next = p - f / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - p) <= 4.0 * std::numeric_limits<double>::epsilon() * p) {
      p = next;
      break;
    }
    p = next;
  }
  return p;
}

RVector inner_allocation(const RVector& gains, int tx_antennas, double sigma_c2, double mu,
                         double v) {
  const Eigen::Index r = gains.size();
  if (r > tx_antennas) throw std::invalid_argument("inner_allocation: more gains than antennas");
  if (!(v > 0.0)) throw std::invalid_argument("inner_allocation: v must be positive");
  RVector p(tx_antennas);
  for (Eigen::Index i = 0; i < r; ++i) {
    p(i) = cubic_stationary_root(gains(i) / sigma_c2, mu, v).value_or(0.0);
  }
  const double sensing = std::sqrt(mu / v);
  for (Eigen::Index i = r; i < tx_antennas; ++i) p(i) = sensing;
  return p;
}

std::array<double, 2> dual_subgradient(const RVector& p, TraceInverseBudget budget, double power) {
  return {-(sum_inverse(p) - budget.value), -(p.sum() - power)};
}

double dual_function(const RVector& gains, int tx_antennas, double sigma_c2, double power,
                     TraceInverseBudget budget, double mu, double v) {
  return evaluate_dual(gains, tx_antennas, sigma_c2, power, budget.value, mu, v).value;
}

KktReport check_kkt(const RVector& gains, double sigma_c2, double power, TraceInverseBudget budget,
                    const PowerAllocation& allocation) {
  const RVector& p = allocation.p;
  const double mu = allocation.mu;
  const double v = allocation.v;
  const Eigen::Index r = gains.size();

  KktReport k;
  const double crb_excess = sum_inverse(p) - budget.value;
  const double power_excess = p.sum() - power;
  k.crb_violation = std::max(0.0, crb_excess);
  k.power_violation = std::max(0.0, power_excess);

  // The equal split at budget = M^2/P carries no finite multipliers; only
  // feasibility applies there.
  if (!std::isfinite(mu) || !std::isfinite(v)) return k;

  for (Eigen::Index i = 0; i < p.size(); ++i) {
    double residual;
    if (i < r) {
      const double g = gains(i) / sigma_c2;
      residual = p(i) > 0.0 ? std::abs(stationarity_residual(g, mu, v, p(i)))
                            : std::max(0.0, g / kLn2 - v);
    } else {
      residual = std::abs(p(i) - std::sqrt(mu / v));
    }
    k.stationarity = std::max(k.stationarity, residual);
  }
  k.crb_slackness = mu > 0.0 ? std::abs(mu * crb_excess) : 0.0;
  k.power_slackness = std::abs(v * power_excess);

  const double primal = rate_of_powers(p, gains, sigma_c2);
  const double dual = dual_function(gains, static_cast<int>(p.size()), sigma_c2, power, budget, mu, v);
  k.relative_gap = std::abs(dual - primal) / std::max(1.0, std::abs(primal));
  return k;
}

AllocationSolve solve_allocation(const RVector& gains, int tx_antennas, double sigma_c2,
                                 double power, TraceInverseBudget budget,
                                 const SolverSettings& settings) {
  settings.validate();
  const int m = tx_antennas;
  const Eigen::Index r = gains.size();
  if (r > m) throw std::invalid_argument("solve_allocation: more gains than antennas");
  if (!(power > 0.0)) throw std::invalid_argument("solve_allocation: power must be positive");
  if ((gains.array() <= 0.0).any()) throw std::invalid_argument("solve_allocation: gains must be positive");

  const double minimum = static_cast<double>(m) * m / power;
  if (!feasibility_check(m, power, budget)) {
    AllocationSolve out;
    out.status = SolveStatus::kInfeasible;
    return out;
  }
  if (budget.value <= minimum * (1.0 + kBoundaryMargin) || r == 0) {
    AllocationSolve out = boundary_solution(m, power);
    out.kkt = check_kkt(gains, sigma_c2, power, budget, out.allocation);
    return out;
  }

  // Full-rank channel whose water-filling already meets the CRB budget.
  if (r == m) {
    const WaterFilling wf = waterfill(gains, sigma_c2, power);
    if ((wf.p.array() > 0.0).all() && sum_inverse(wf.p) <= budget.value) {
      AllocationSolve out;
      out.allocation.p = wf.p;
      out.allocation.mu = 0.0;
      out.allocation.v = 1.0 / (wf.water_level * kLn2);
      out.kkt = check_kkt(gains, sigma_c2, power, budget, out.allocation);
      out.allocation.diagnostics.kkt_residual = out.kkt.worst(budget.value, power);
      out.allocation.diagnostics.duality_gap = out.kkt.relative_gap;
      out.status = out.kkt.satisfied(settings.kkt_tol, settings.gap_tol, budget.value, power)
                       ? SolveStatus::kOptimal
                       : SolveStatus::kIterationLimit;
      return out;
    }
  }

  const double max_gain = r > 0 ? gains.maxCoeff() / sigma_c2 : 0.0;
  double box = settings.dual_box_initial.value_or(10.0 * (max_gain / kLn2 + power * budget.value));

  AllocationSolve out;
  int total_iters = 0;
  for (int restart = 0; restart < 64; ++restart) {
    const int remaining = settings.max_ellipsoid_iters - total_iters;
    if (remaining <= 0) break;
    const EllipsoidResult e = ellipsoid_search(gains, m, sigma_c2, power, budget.value, box, remaining);
    total_iters += e.iterations;
    double mu = e.mu;
    double v = e.v;
    total_iters += newton_polish(gains, m, sigma_c2, power, budget.value, mu, v, 100);

    out.allocation.p = inner_allocation(gains, m, sigma_c2, mu, v);
    out.allocation.mu = mu;
    out.allocation.v = v;
    out.kkt = check_kkt(gains, sigma_c2, power, budget, out.allocation);
    if (out.kkt.satisfied(settings.kkt_tol, settings.gap_tol, budget.value, power)) {
      out.status = SolveStatus::kOptimal;
      break;
    }
    // An optimum on the edge of the search region means the box was too small.
    if (e.mu < 0.25 * box && e.v < 0.25 * box) break;
    box *= 2.0;
  }
  out.allocation.diagnostics.iterations = total_iters;
  out.allocation.diagnostics.kkt_residual = out.kkt.worst(budget.value, power);
  out.allocation.diagnostics.duality_gap = out.kkt.relative_gap;
  return out;
}

TransmitCovariance assemble_covariance(const CMatrix& Vc, const RVector& p, double budget) {
  if (Vc.cols() != p.size()) throw std::invalid_argument("assemble_covariance: size mismatch");
  TransmitCovariance cov;
  cov.Q = Vc * p.cast<std::complex<double>>().asDiagonal() * Vc.adjoint();
  cov.Q = 0.5 * (cov.Q + cov.Q.adjoint()).eval();
  cov.budget = budget;
  return cov;
}

CovarianceSplit split_covariance(const CMatrix& Vc, const RVector& p, int rank) {
  const Eigen::Index m = p.size();
  if (rank < 0 || rank > m) throw std::invalid_argument("split_covariance: bad rank");
  const CMatrix v_bar = Vc.leftCols(rank);
  const CMatrix v_hat = Vc.rightCols(m - rank);
  CovarianceSplit split;
  split.communication =
      v_bar * p.head(rank).cast<std::complex<double>>().asDiagonal() * v_bar.adjoint();
  split.sensing =
      v_hat * p.tail(m - rank).cast<std::complex<double>>().asDiagonal() * v_hat.adjoint();
  return split;
}

SolveReport solve_p1(const ChannelMatrix& channel, const Scenario& scenario, CrbThreshold gamma,
                     const SolverSettings& settings) {
  const int m = static_cast<int>(channel.tx_antennas());
  const TraceInverseBudget budget = to_trace_budget(gamma, scenario);
  const RVector& s = channel.singular_values;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > settings.rank_tol * s(0)) ++rank;
  const RVector gains = s.head(rank).array().square();
  const AllocationSolve solve =
      solve_allocation(gains, m, scenario.sigma_c2, scenario.power, budget, settings);

  SolveReport report;
  report.allocation = solve.allocation;
  report.status = solve.status;
  report.kkt = solve.kkt;
  report.achieved.scheme = Scheme::kOptimal;
  report.achieved.gamma_target = gamma.value;
  if (solve.status == SolveStatus::kInfeasible) {
    report.achieved.crb = kInfinity;
    report.achieved.rate = 0.0;
    return report;
  }
  report.covariance = assemble_covariance(channel.V, solve.allocation.p, scenario.power);
  report.achieved.crb = crb_trace(report.covariance.Q, scenario);
  report.achieved.rate = rate(report.covariance.Q, channel.H, scenario.sigma_c2);
  return report;
}

}  // namespace isac
