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

#include "isac/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isac {

TraceInverseBudget to_trace_budget(CrbThreshold gamma, const Scenario& scenario) {
  return {gamma.value / scenario.crb_scale()};
}

CrbThreshold to_crb_threshold(TraceInverseBudget budget, const Scenario& scenario) {
  return {budget.value * scenario.crb_scale()};
}

bool TransmitCovariance::is_valid() const {
  if (Q.rows() != Q.cols() || Q.rows() == 0) return false;
  const double norm = Q.norm();
  if ((Q - Q.adjoint()).norm() > 1e-12 * std::max(1.0, norm)) return false;
  const double trace = Q.trace().real();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(Q, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10 * std::abs(trace)) return false;
  return trace <= budget + 1e-8;
}

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kOptimal: return "optimal";
    case Scheme::kWaterfill: return "waterfill";
    case Scheme::kCrbMin: return "crbmin";
    case Scheme::kTimeSwitch: return "time_switch";
    case Scheme::kEqualPower: return "ep";
    case Scheme::kStrongestEigenmode: return "sem";
    case Scheme::kOracle: return "oracle";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::kOptimal, Scheme::kWaterfill, Scheme::kCrbMin, Scheme::kTimeSwitch,
                   Scheme::kEqualPower, Scheme::kStrongestEigenmode, Scheme::kOracle}) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

double rate(const CMatrix& Q, const CMatrix& H, double sigma_c2) {
  if (Q.rows() != Q.cols() || H.cols() != Q.rows()) {
    throw std::invalid_argument("rate: covariance and channel dimensions disagree");
  }
  const Eigen::Index nc = H.rows();
  CMatrix gram = CMatrix::Identity(nc, nc) + (H * Q * H.adjoint()) / sigma_c2;
  gram = 0.5 * (gram + gram.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  double bits = 0.0;
  for (Eigen::Index i = 0; i < nc; ++i) bits += std::log2(std::max(eig.eigenvalues()(i), 1.0));
  return bits;
}

double crb_trace(const CMatrix& Q, double sigma_s2, int sensing_antennas, int cpi_length) {
  if (Q.rows() != Q.cols()) throw std::invalid_argument("crb_trace: Q must be square");
  CMatrix herm = 0.5 * (Q + Q.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm, Eigen::EigenvaluesOnly);
  const double scale = sigma_s2 * sensing_antennas / static_cast<double>(cpi_length);
  return crb_of_powers(eig.eigenvalues(), scale);
}

double crb_trace(const CMatrix& Q, const Scenario& scenario) {
  return crb_trace(Q, scenario.sigma_s2, scenario.sensing_antennas, scenario.cpi_length);
}

double crb_of_powers(const RVector& powers, double crb_scale) {
  const double m = static_cast<double>(powers.size());
  const double floor = kEigenFloor * powers.sum() / m;
  double sum_inv = 0.0;
  for (Eigen::Index i = 0; i < powers.size(); ++i) {
    if (!(powers(i) > floor) || powers(i) <= 0.0) return kInfinity;
    sum_inv += 1.0 / powers(i);
  }
  return crb_scale * sum_inv;
}

double rate_of_powers(const RVector& powers, const RVector& gains, double sigma_c2) {
  double bits = 0.0;
  for (Eigen::Index i = 0; i < gains.size(); ++i) {
    bits += std::log2(1.0 + gains(i) * powers(i) / sigma_c2);
  }
  return bits;
}

CMatrix rotate_to_eigenbasis(const CMatrix& Q, const CMatrix& Vc) { return Vc.adjoint() * Q * Vc; }

CMatrix rotate_from_eigenbasis(const CMatrix& Qt, const CMatrix& Vc) {
  return Vc * Qt * Vc.adjoint();
}

}  // namespace isac
