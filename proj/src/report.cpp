/*
 * Copyright 2026 The hybridcf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "hybridcf/harness.hpp"

namespace hybridcf {

std::vector<std::pair<double, double>> compute_cdf(std::span<const double> pool) {
  if (pool.empty()) throw std::invalid_argument("compute_cdf: empty rate pool");
  std::vector<double> sorted(pool.begin(), pool.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

std::string format_number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buffer, end);
}

void write_sweep_csv(const ExperimentReport& report, std::ostream& out) {
  out << kSweepHeader << '\n';
  for (const auto& row : report.rows) {
    out << row.sweep_param << ',' << format_number(row.sweep_value) << ','
        << to_string(row.series.system) << ',' << to_string(row.series.solver) << ','
        << to_string(row.series.clustering) << ',' << format_number(row.mean_sum_rate) << ','
        << row.trials << ',' << format_number(row.mean_iterations) << ','
        << format_number(row.mean_changes) << '\n';
  }
}

void write_cdf_csv(const ExperimentReport& report, std::ostream& out) {
  out << kCdfHeader << '\n';
  for (const auto& pool : report.pools) {
    if (pool.rates.empty()) continue;
    for (const auto& [rate, fraction] : compute_cdf(pool.rates)) {
      out << to_string(pool.series.system) << ',' << to_string(pool.series.solver) << ','
          << to_string(pool.series.clustering) << ',' << pool.n_users << ','
          << format_number(rate) << ',' << format_number(fraction) << '\n';
    }
  }
}

void write_report(const ExperimentReport& report, OutputKind kind, const std::filesystem::path& path) {
  std::ostringstream text;
  if (kind == OutputKind::kCdf) {
    write_cdf_csv(report, text);
  } else {
    write_sweep_csv(report, text);
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string bytes = text.str();
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  file.close();
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace hybridcf
