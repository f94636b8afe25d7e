// Copyright 2026 The sagerl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace sagerl::bench {

inline constexpr int kReportSchemaVersion = 1;

struct ResultRow {
  std::string method;   // e.g. "GS_A1_[30,30]_10ep", "*" prefix for the learned sampler
  std::string dataset;
  std::string sampler;  // "uniform" | "rl"
  std::vector<std::uint64_t> seeds;
  std::vector<double> f1_per_seed;
  double f1_mean = 0;
  double test_seconds = 0;  // mean over seeds
  double param_mb = 0;      // MiB at 4 bytes per parameter
  std::size_t epochs = 0;
  nlohmann::ordered_json config;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

double mean(const std::vector<double>& xs);

/// Rows as a versioned JSON document. Wall time is left out so the report
/// is byte-identical across reruns.
nlohmann::ordered_json report_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_json(const nlohmann::json& doc);

/// Aligned text table. With `with_time` the Time (s) column is included.
std::string render_table(const std::vector<ResultRow>& rows, bool with_time);

struct ReportPaths {
  std::filesystem::path json;     // results.json
  std::filesystem::path table;    // results.txt
  std::filesystem::path timings;  // timings.json
};

/// Writes results.json and results.txt (deterministic) plus timings.json
/// into `dir`, overwriting.
ReportPaths report(const std::vector<ResultRow>& rows, const std::filesystem::path& dir);

/// Reads results.json and timings.json back.
std::vector<ResultRow> load_report(const std::filesystem::path& dir);

}  // namespace sagerl::bench
