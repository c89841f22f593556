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

#ifndef ISAC_METRICS_HPP
#define ISAC_METRICS_HPP

#include <optional>
#include <string_view>

#include "isac/scenario.hpp"

namespace isac {

/// Eigenvalues at or below this fraction of trace(Q)/M count as zero when
/// deciding whether the CRB is finite.
inline constexpr double kEigenFloor = 1e-9;

/// CRB threshold Gamma, in the units of the CRB itself.
struct CrbThreshold {
  double value;
};

/// Normalized threshold on tr(Q^-1): L * Gamma / (sigma_s2 * Ns).
struct TraceInverseBudget {
  double value;
};

TraceInverseBudget to_trace_budget(CrbThreshold gamma, const Scenario& scenario);
CrbThreshold to_crb_threshold(TraceInverseBudget budget, const Scenario& scenario);

/// Hermitian PSD transmit covariance with its power budget.
struct TransmitCovariance {
  CMatrix Q;
  double budget = 0.0;

  /// True when Q is Hermitian, PSD and within budget up to the usual tolerances.
  bool is_valid() const;
};

enum class Scheme { kOptimal, kWaterfill, kCrbMin, kTimeSwitch, kEqualPower, kStrongestEigenmode, kOracle };

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

/// One achievable (CRB, rate) pair.
struct CRPoint {
  double crb = kInfinity;
  double rate = 0.0;  // bps/Hz
  std::optional<double> gamma_target;
  Scheme scheme = Scheme::kOptimal;
};

/// log2 det(I + H Q H^H / sigma_c2).
double rate(const CMatrix& Q, const CMatrix& H, double sigma_c2);

/// sigma_s2 * Ns / L * tr(Q^-1), evaluated through the eigenvalues of Q.
/// Returns +inf when Q is numerically rank deficient.
double crb_trace(const CMatrix& Q, double sigma_s2, int sensing_antennas, int cpi_length);
double crb_trace(const CMatrix& Q, const Scenario& scenario);

/// CRB of Vc diag(p) Vc^H, i.e. scale * sum 1/p_i with the same zero floor as crb_trace.
double crb_of_powers(const RVector& powers, double crb_scale);

/// Rate of Vc diag(p) Vc^H given the channel gains lambda_i^2 (first r entries of p).
double rate_of_powers(const RVector& powers, const RVector& gains, double sigma_c2);

/// Vc^H Q Vc.
CMatrix rotate_to_eigenbasis(const CMatrix& Q, const CMatrix& Vc);
/// Vc Qt Vc^H.
CMatrix rotate_from_eigenbasis(const CMatrix& Qt, const CMatrix& Vc);

}  // namespace isac

#endif  // ISAC_METRICS_HPP
