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

#ifndef ISAC_SCENARIO_HPP
#define ISAC_SCENARIO_HPP

#include <complex>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace isac {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative singular-value threshold used to decide the rank of a channel.
inline constexpr double kDefaultRankTol = 1e-9;

class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical and system parameters of one ISAC link.
///
/// `rician_factor` may be +inf, meaning a pure line-of-sight channel. The
/// angle is shared by the CU arrival and the BS departure.
struct Scenario {
  int tx_antennas = 8;        // M
  int cu_antennas = 6;        // Nc
  int sensing_antennas = 12;  // Ns
  int cpi_length = 200;       // L
  double power = 800.0;       // P
  double sigma_c2 = 1.0;
  double sigma_s2 = 1.0;
  double rician_factor = 100.0;
  double theta = 0.0;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> fixture_path;

  /// Throws ScenarioError when any field is out of range.
  void validate() const;

  /// Scale factor sigma_s2 * Ns / L mapping tr(Q^-1) onto the CRB.
  double crb_scale() const {
    return sigma_s2 * sensing_antennas / static_cast<double>(cpi_length);
  }

  /// M=8, Nc=6, Kc=100, P=800, theta=pi/6 (rank-deficient channel).
  static Scenario rank_deficient_preset();
  /// M=Nc=6, Kc=20, P=800, theta=pi/6 (full-column-rank channel).
  static Scenario full_rank_preset();
};

/// Communication channel with its full SVD, H = U * diag(s) * V^H.
struct ChannelMatrix {
  CMatrix H;
  CMatrix U;                // Nc x Nc
  RVector singular_values;  // min(Nc, M) entries, non-increasing
  CMatrix V;                // M x M
  int rank = 0;

  Eigen::Index tx_antennas() const { return H.cols(); }
  Eigen::Index rx_antennas() const { return H.rows(); }

  /// Squared non-zero singular values lambda_1^2 >= ... >= lambda_r^2.
  RVector gains() const { return singular_values.head(rank).array().square(); }

  /// Decomposes `h`; singular values at or below rank_tol * s_max count as zero.
  static ChannelMatrix from_matrix(CMatrix h, double rank_tol = kDefaultRankTol);
};

/// Deterministic source of circularly-symmetric complex Gaussian samples.
///
/// Uniforms come from std::mt19937_64 (whose output sequence is fixed by the
/// standard) as 53-bit doubles in (0, 1); normals use the Box-Muller
/// transform with both outputs consumed in order. A complex sample is two
/// consecutive normals scaled by sqrt(1/2) (real part first).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double standard_normal();
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// ULA steering vector with half-wavelength spacing: entry m is exp(j*pi*m*sin(theta)).
CVector steering_vector(int count, double theta);

/// Rician channel sqrt(K/(K+1)) a_r a_t^T + sqrt(1/(K+1)) H_w. When the
/// scenario names a fixture file the matrix is loaded from it instead.
ChannelMatrix rician_channel(const Scenario& scenario, GaussianSource& rng);

/// Convenience overload seeding a fresh source from scenario.seed.
ChannelMatrix rician_channel(const Scenario& scenario);

/// Writes H as CSV: a `rows,cols` header, then one line per row with
/// alternating real/imaginary columns at 17 significant digits.
void save_fixture(const CMatrix& h, const std::filesystem::path& path);
CMatrix load_fixture(const std::filesystem::path& path);

}  // namespace isac

#endif  // ISAC_SCENARIO_HPP
