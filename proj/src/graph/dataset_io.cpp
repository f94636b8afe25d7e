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

#include "sagerl/graph/dataset_io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>

#include "json.hpp"

namespace sagerl::graph {
namespace fs = std::filesystem;
namespace {

[[noreturn]] void fail(const fs::path& file, std::size_t line, const std::string& why) {
  throw GraphError(file.string() + ":" + std::to_string(line) + ": " + why);
}

std::ifstream open_input(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw GraphError(file.string() + ": cannot open file");
  return in;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename V>
bool parse(std::string_view tok, V& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

DatasetMeta read_meta(const fs::path& file) {
  auto in = open_input(file);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(file, 1, std::string("invalid JSON: ") + e.what());
  }
  DatasetMeta meta;
  try {
    meta.num_nodes = j.at("num_nodes").get<std::size_t>();
    meta.feature_dim = j.at("feature_dim").get<std::size_t>();
    meta.label_count = j.at("num_labels").get<std::size_t>();
    const auto mode = j.at("label_mode").get<std::string>();
    if (mode == "single") {
      meta.label_mode = LabelMode::kSingle;
    } else if (mode == "multi") {
      meta.label_mode = LabelMode::kMulti;
    } else {
      fail(file, 1, "label_mode must be \"single\" or \"multi\", got \"" + mode + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(file, 1, e.what());
  }
  try {
    meta.validate();
  } catch (const GraphError& e) {
    fail(file, 1, e.what());
  }
  return meta;
}

std::vector<std::pair<NodeId, NodeId>> read_edges(const fs::path& file, std::size_t n) {
  auto in = open_input(file);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    std::uint64_t a = 0, b = 0;
    if (tok.size() != 2 || !parse(tok[0], a) || !parse(tok[1], b)) {
      fail(file, lineno, "expected two node ids");
    }
    if (a >= n || b >= n) {
      fail(file, lineno, "node id out of range (num_nodes = " + std::to_string(n) + ")");
    }
    edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  return edges;
}

nd::Matrix<double> read_features_tsv(const fs::path& file, const DatasetMeta& meta) {
  auto in = open_input(file);
  nd::Matrix<double> x(meta.num_nodes, meta.feature_dim);
  std::string line;
  std::size_t row = 0;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (row >= meta.num_nodes) {
      if (split_ws(line).empty()) continue;
      fail(file, lineno, "more feature rows than num_nodes = " + std::to_string(meta.num_nodes));
    }
    auto tok = split_ws(line);
    if (tok.size() != meta.feature_dim) {
      fail(file, lineno, "expected " + std::to_string(meta.feature_dim) + " values, got " +
                             std::to_string(tok.size()));
    }
    for (std::size_t c = 0; c < tok.size(); ++c) {
      float v = 0;
      if (!parse(tok[c], v)) fail(file, lineno, "bad float \"" + std::string(tok[c]) + "\"");
      x(row, c) = v;
    }
    ++row;
  }
  if (row != meta.num_nodes) {
    fail(file, row + 1, "found " + std::to_string(row) + " feature rows, expected " +
                             std::to_string(meta.num_nodes));
  }
  return x;
}

nd::Matrix<double> read_features_f32(const fs::path& file, const DatasetMeta& meta) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw GraphError(file.string() + ": cannot open file");
  const std::size_t count = meta.num_nodes * meta.feature_dim;
  std::vector<std::uint32_t> raw(count);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 4));
  if (static_cast<std::size_t>(in.gcount()) != count * 4 || in.peek() != EOF) {
    fail(file, 0, "expected exactly " + std::to_string(count) + " float32 values");
  }
  nd::Matrix<double> x(meta.num_nodes, meta.feature_dim);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t bits = raw[i];
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
    x.data()[i] = std::bit_cast<float>(bits);
  }
  return x;
}

nd::Matrix<double> read_labels(const fs::path& file, const DatasetMeta& meta) {
  auto in = open_input(file);
  nd::Matrix<double> y(meta.num_nodes, meta.label_count);
  std::string line;
  std::size_t row = 0;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto tok = split_ws(line);
    if (row >= meta.num_nodes) {
      if (tok.empty()) continue;
      fail(file, lineno, "more label rows than num_nodes");
    }
    if (meta.label_mode == LabelMode::kSingle && tok.size() != 1) {
      fail(file, lineno, "single-label mode needs exactly one label id");
    }
    for (auto t : tok) {
      std::uint64_t id = 0;
      if (!parse(t, id) || id >= meta.label_count) {
        fail(file, lineno, "label id \"" + std::string(t) + "\" not in [0, " +
                               std::to_string(meta.label_count) + ")");
      }
      y(row, id) = 1.0;
    }
    ++row;
  }
  if (row != meta.num_nodes) {
    fail(file, row + 1, "found " + std::to_string(row) + " label rows, expected " +
                             std::to_string(meta.num_nodes));
  }
  return y;
}

std::vector<Split> read_split(const fs::path& file, std::size_t n) {
  auto in = open_input(file);
  std::vector<Split> split;
  split.reserve(n);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto tok = split_ws(line);
    if (tok.empty() && split.size() >= n) continue;
    if (tok.size() != 1) fail(file, lineno, "expected one of train/val/test");
    if (split.size() >= n) fail(file, lineno, "more split rows than num_nodes");
    if (tok[0] == "train") {
      split.push_back(Split::kTrain);
    } else if (tok[0] == "val") {
      split.push_back(Split::kVal);
    } else if (tok[0] == "test") {
      split.push_back(Split::kTest);
    } else {
      fail(file, lineno, "unknown split tag \"" + std::string(tok[0]) + "\"");
    }
  }
  if (split.size() != n) {
    fail(file, split.size() + 1, "found " + std::to_string(split.size()) +
                                     " split rows, expected " + std::to_string(n));
  }
  return split;
}

std::ofstream open_output(const fs::path& file, bool binary = false) {
  std::ofstream out(file, binary ? std::ios::binary : std::ios::out);
  if (!out) throw GraphError(file.string() + ": cannot open for writing");
  return out;
}

}  // namespace

Graph load_dataset(const fs::path& dir) {
  const auto meta = read_meta(dir / "meta.json");
  auto edges = read_edges(dir / "edges.txt", meta.num_nodes);
  auto features = fs::exists(dir / "features.f32") ? read_features_f32(dir / "features.f32", meta)
                                                   : read_features_tsv(dir / "features.tsv", meta);
  auto labels = read_labels(dir / "labels.tsv", meta);
  auto split = read_split(dir / "split.tsv", meta.num_nodes);
  return Graph::from_edges(meta, edges, std::move(features), std::move(labels), std::move(split));
}

void save_dataset(const Graph& g, const fs::path& dir, bool binary_features) {
  fs::create_directories(dir);
  const auto& meta = g.meta();
  {
    nlohmann::ordered_json j;
    j["num_nodes"] = meta.num_nodes;
    j["feature_dim"] = meta.feature_dim;
    j["num_labels"] = meta.label_count;
    j["label_mode"] = to_string(meta.label_mode);
    open_output(dir / "meta.json") << j.dump(2) << "\n";
  }
  {
    auto out = open_output(dir / "edges.txt");
    for (auto [a, b] : g.edge_list()) out << a << ' ' << b << '\n';
  }
  if (binary_features) {
    auto out = open_output(dir / "features.f32", true);
    for (double v : g.features().flat()) {
      auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
      out.write(reinterpret_cast<const char*>(&bits), 4);
    }
  } else {
    fs::remove(dir / "features.f32");
  }
  {
    auto out = open_output(dir / "features.tsv");
    char buf[32];
    for (std::size_t v = 0; v < g.num_nodes(); ++v) {
      auto row = g.features().row(v);
      for (std::size_t c = 0; c < row.size(); ++c) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<float>(row[c]));
        if (c) out << '\t';
        out.write(buf, p - buf);
      }
      out << '\n';
    }
  }
  {
    auto out = open_output(dir / "labels.tsv");
    for (std::size_t v = 0; v < g.num_nodes(); ++v) {
      bool first = true;
      auto row = g.labels().row(v);
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] == 0.0) continue;
        if (!first) out << ' ';
        out << c;
        first = false;
      }
      out << '\n';
    }
  }
  {
    auto out = open_output(dir / "split.tsv");
    for (auto s : g.split()) out << to_string(s) << '\n';
  }
}

}  // namespace sagerl::graph
