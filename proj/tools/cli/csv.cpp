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

#include "cli/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace isac::cli {

std::string format_float(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  std::string s(buf);
  // %e pads the exponent to two digits; drop the padding.
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  char sign = s[e + 1];
  std::string digits = s.substr(e + 2);
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  return mantissa + "e" + (sign == '-' ? "-" : "") + digits;
}

std::string format_optional(const std::optional<double>& x) {
  return x ? format_float(*x) : std::string();
}

void sort_rows(std::vector<SweepRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    const auto na = scheme_name(a.scheme);
    const auto nb = scheme_name(b.scheme);
    if (na != nb) return na < nb;
    if (std::isnan(a.crb)) return false;
    if (std::isnan(b.crb)) return true;
    return a.crb < b.crb;
  });
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& row : rows) {
    out << scheme_name(row.scheme) << ',' << format_optional(row.gamma_target) << ','
        << format_float(row.crb) << ',' << format_float(row.rate) << ','
        << format_optional(row.mu) << ',' << format_optional(row.v) << ','
        << (row.iterations ? std::to_string(*row.iterations) : std::string()) << ','
        << format_optional(row.kkt_residual) << ',' << row.status << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  if (s == "inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw std::runtime_error("bad number '" + s + "'");
  return x;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace

std::vector<CsvRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw std::runtime_error("unexpected CSV header");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 9) throw std::runtime_error("expected 9 fields: " + line);
    CsvRow row;
    row.scheme = f[0];
    row.gamma_target = parse_optional(f[1]);
    row.crb = parse_double(f[2]);
    row.rate = parse_double(f[3]);
    row.mu = parse_optional(f[4]);
    row.v = parse_optional(f[5]);
    if (!f[6].empty()) row.iterations = std::stoi(f[6]);
    row.kkt_residual = parse_optional(f[7]);
    row.status = f[8];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string plot_script(std::string_view csv_name, std::string_view title) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
       "# Plots the C-R frontier from " << csv_name << ".\n"
       "# Columns: scheme -> curve label, crb -> x axis, rate_bps_hz -> y axis.\n"
       "# Rows whose status is not optimal or ok are skipped.\n"
       "import csv\n"
       "import sys\n"
       "from collections import defaultdict\n"
       "\n"
       "import matplotlib.pyplot as plt\n"
       "\n"
       "path = sys.argv[1] if len(sys.argv) > 1 else \"" << csv_name << "\"\n"
       "curves = defaultdict(list)\n"
       "with open(path, newline=\"\") as f:\n"
       "    for row in csv.DictReader(f):\n"
       "        if row[\"status\"] not in (\"optimal\", \"ok\"):\n"
       "            continue\n"
       "        curves[row[\"scheme\"]].append((float(row[\"crb\"]), float(row[\"rate_bps_hz\"])))\n"
       "\n"
       "for scheme, pts in sorted(curves.items()):\n"
       "    pts.sort()\n"
       "    plt.plot([p[0] for p in pts], [p[1] for p in pts], marker=\".\", label=scheme)\n"
       "plt.xscale(\"log\")\n"
       "plt.xlabel(\"CRB\")\n"
       "plt.ylabel(\"rate (bps/Hz)\")\n"
       "plt.title(\"" << title << "\")\n"
       "plt.legend()\n"
       "plt.grid(True, which=\"both\", alpha=0.3)\n"
       "plt.savefig(path.rsplit(\".\", 1)[0] + \".png\", dpi=150)\n";
  return s.str();
}

}  // namespace isac::cli
