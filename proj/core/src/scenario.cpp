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

#include "isac/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string_view>
#include <vector>

namespace isac {

void Scenario::validate() const {
  if (tx_antennas <= 1) throw ScenarioError("M must be greater than 1");
  if (cu_antennas <= 1) throw ScenarioError("Nc must be greater than 1");
  if (sensing_antennas < 1) throw ScenarioError("Ns must be at least 1");
  if (cpi_length <= tx_antennas) throw ScenarioError("L must exceed M");
  if (!(power > 0.0) || !std::isfinite(power)) throw ScenarioError("P must be positive");
  if (!(sigma_c2 > 0.0)) throw ScenarioError("sigma_c2 must be positive");
  if (!(sigma_s2 > 0.0)) throw ScenarioError("sigma_s2 must be positive");
  if (!(rician_factor >= 0.0)) throw ScenarioError("Kc must be non-negative");
  if (!std::isfinite(theta)) throw ScenarioError("theta must be finite");
}

Scenario Scenario::rank_deficient_preset() {
  Scenario s;
  s.tx_antennas = 8;
  s.cu_antennas = 6;
  s.sensing_antennas = 12;
  s.cpi_length = 200;
  s.power = 800.0;
  s.rician_factor = 100.0;
  s.theta = std::numbers::pi / 6.0;
  return s;
}

Scenario Scenario::full_rank_preset() {
  Scenario s = rank_deficient_preset();
  s.tx_antennas = 6;
  s.cu_antennas = 6;
  s.rician_factor = 20.0;
  return s;
}

ChannelMatrix ChannelMatrix::from_matrix(CMatrix h, double rank_tol) {
  if (h.size() == 0) throw ScenarioError("empty channel matrix");
  Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);

  ChannelMatrix out;
  out.H = std::move(h);
  out.U = svd.matrixU();
  out.V = svd.matrixV();
  out.singular_values = svd.singularValues();
  const double top = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
  out.rank = 0;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values(i) > rank_tol * top) ++out.rank;
  }
  return out;
}

double GaussianSource::uniform() {
  // 53 random bits, offset by half an ulp so the result never hits 0 or 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianSource::standard_normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::complex<double> GaussianSource::complex_normal() {
  const double re = standard_normal();
  const double im = standard_normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

CVector steering_vector(int count, double theta) {
  if (count < 1) throw ScenarioError("steering vector needs at least one element");
  CVector a(count);
  const double phase = std::numbers::pi * std::sin(theta);
  for (int m = 0; m < count; ++m) a(m) = std::polar(1.0, phase * m);
  return a;
}

ChannelMatrix rician_channel(const Scenario& scenario, GaussianSource& rng) {
  scenario.validate();
  const int nc = scenario.cu_antennas;
  const int m = scenario.tx_antennas;

  if (scenario.fixture_path) {
    CMatrix h = load_fixture(*scenario.fixture_path);
    if (h.rows() != nc || h.cols() != m) {
      std::ostringstream msg;
      msg << "fixture " << scenario.fixture_path->string() << " is " << h.rows() << "x"
          << h.cols() << ", scenario expects " << nc << "x" << m;
      throw FixtureError(msg.str());
    }
    return ChannelMatrix::from_matrix(std::move(h));
  }

  const CMatrix los =
      steering_vector(nc, scenario.theta) * steering_vector(m, scenario.theta).transpose();
  const double k = scenario.rician_factor;
  if (std::isinf(k)) return ChannelMatrix::from_matrix(los);

  CMatrix diffuse(nc, m);
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < m; ++j) diffuse(i, j) = rng.complex_normal();
  }
  CMatrix h = std::sqrt(k / (k + 1.0)) * los + std::sqrt(1.0 / (k + 1.0)) * diffuse;
  return ChannelMatrix::from_matrix(std::move(h));
}

ChannelMatrix rician_channel(const Scenario& scenario) {
  GaussianSource rng(scenario.seed);
  return rician_channel(scenario, rng);
}

namespace {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view field, const std::filesystem::path& path, int line_no) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    std::ostringstream msg;
    msg << path.string() << ":" << line_no << ": cannot parse '" << field << "'";
    throw FixtureError(msg.str());
  }
  return value;
}

}  // namespace

void save_fixture(const CMatrix& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FixtureError("cannot open " + path.string() + " for writing");
  out << h.rows() << ',' << h.cols() << '\n';
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(h(i, j).real()) << ',' << format_double(h(i, j).imag());
    }
    out << '\n';
  }
  if (!out) throw FixtureError("write failed for " + path.string());
}

CMatrix load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw FixtureError(path.string() + ": missing header");
  const auto header = split_commas(line);
  if (header.size() != 2) throw FixtureError(path.string() + ": header must be 'rows,cols'");
  const auto rows = parse_field<long>(header[0], path, 1);
  const auto cols = parse_field<long>(header[1], path, 1);
  if (rows < 1 || cols < 1) throw FixtureError(path.string() + ": bad dimensions");

  CMatrix h(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw FixtureError(path.string() + ": truncated, expected " + std::to_string(rows) +
                         " rows");
    }
    const int line_no = static_cast<int>(i) + 2;
    const auto fields = split_commas(line);
    if (static_cast<long>(fields.size()) != 2 * cols) {
      throw FixtureError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                         std::to_string(2 * cols) + " columns");
    }
    for (long j = 0; j < cols; ++j) {
      h(i, j) = {parse_field<double>(fields[2 * j], path, line_no),
                 parse_field<double>(fields[2 * j + 1], path, line_no)};
    }
  }
  return h;
}

}  // namespace isac
