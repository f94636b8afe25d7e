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

#include "sagerl/bench/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sagerl::bench {
namespace fs = std::filesystem;

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

nlohmann::ordered_json report_json(const std::vector<ResultRow>& rows) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["dataset"] = r.dataset;
    j["sampler"] = r.sampler;
    j["seeds"] = r.seeds;
    j["f1_per_seed"] = r.f1_per_seed;
    j["f1_mean"] = r.f1_mean;
    j["param_mb"] = r.param_mb;
    j["epochs"] = r.epochs;
    j["config"] = r.config;
    doc["rows"].push_back(std::move(j));
  }
  return doc;
}

std::vector<ResultRow> rows_from_json(const nlohmann::json& doc) {
  if (doc.value("schema_version", 0) != kReportSchemaVersion) {
    throw std::runtime_error("report: unsupported schema_version");
  }
  std::vector<ResultRow> rows;
  for (const auto& j : doc.at("rows")) {
    ResultRow r;
    r.method = j.at("method").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    r.sampler = j.at("sampler").get<std::string>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    r.f1_per_seed = j.at("f1_per_seed").get<std::vector<double>>();
    r.f1_mean = j.at("f1_mean").get<double>();
    r.param_mb = j.at("param_mb").get<double>();
    r.epochs = j.at("epochs").get<std::size_t>();
    r.config = j.at("config");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render_table(const std::vector<ResultRow>& rows, bool with_time) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"#", "Method", "Dataset", "F1"};
  if (with_time) header.emplace_back("Time (s)");
  header.emplace_back("Par (MB)");
  header.emplace_back("F1 per seed");
  cells.push_back(header);
  char buf[64];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::vector<std::string> line{std::to_string(i + 1), r.method, r.dataset};
    std::snprintf(buf, sizeof buf, "%.3f", r.f1_mean);
    line.emplace_back(buf);
    if (with_time) {
      std::snprintf(buf, sizeof buf, "%.3f", r.test_seconds);
      line.emplace_back(buf);
    }
    std::snprintf(buf, sizeof buf, "%.2f", r.param_mb);
    line.emplace_back(buf);
    std::string per;
    for (std::size_t s = 0; s < r.f1_per_seed.size(); ++s) {
      std::snprintf(buf, sizeof buf, "%s%.3f", s ? " " : "", r.f1_per_seed[s]);
      per += buf;
    }
    line.push_back(per);
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  for (std::size_t li = 0; li < cells.size(); ++li) {
    for (std::size_t c = 0; c < cells[li].size(); ++c) {
      if (c) out << "  ";
      const bool last = c + 1 == cells[li].size();
      out << std::left << std::setw(last ? 0 : static_cast<int>(width[c])) << cells[li][c];
    }
    out << '\n';
    if (li == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      out << std::string(total - 2, '-') << '\n';
    }
  }
  return out.str();
}

namespace {

void write_file(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(file.string() + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(file.string() + ": write failed");
}

}  // namespace

ReportPaths report(const std::vector<ResultRow>& rows, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": " + ec.message());
  ReportPaths paths{dir / "results.json", dir / "results.txt", dir / "timings.json"};
  write_file(paths.json, report_json(rows).dump(2) + "\n");
  write_file(paths.table, render_table(rows, false));
  nlohmann::ordered_json timings = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    timings.push_back({{"method", r.method}, {"dataset", r.dataset}, {"test_seconds", r.test_seconds}});
  }
  write_file(paths.timings, timings.dump(2) + "\n");
  return paths;
}

std::vector<ResultRow> load_report(const fs::path& dir) {
  std::ifstream in(dir / "results.json");
  if (!in) throw std::runtime_error((dir / "results.json").string() + ": cannot open file");
  auto rows = rows_from_json(nlohmann::json::parse(in));
  std::ifstream tin(dir / "timings.json");
  if (tin) {
    const auto timings = nlohmann::json::parse(tin);
    for (std::size_t i = 0; i < rows.size() && i < timings.size(); ++i) {
      rows[i].test_seconds = timings[i].at("test_seconds").get<double>();
    }
  }
  return rows;
}

}  // namespace sagerl::bench
