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

#include "sagerl/graph/graph.hpp"

#include <algorithm>

namespace sagerl::graph {

const char* to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "?";
}

const char* to_string(LabelMode m) { return m == LabelMode::kSingle ? "single" : "multi"; }

void DatasetMeta::validate() const {
  if (feature_dim < 1) throw GraphError("dataset meta: feature_dim must be >= 1");
  if (label_count < 2) throw GraphError("dataset meta: num_labels must be >= 2");
}

Graph Graph::from_edges(DatasetMeta meta, std::span<const std::pair<NodeId, NodeId>> edges,
                        nd::Matrix<double> features, nd::Matrix<double> labels,
                        std::vector<Split> split) {
  meta.validate();
  const std::size_t n = meta.num_nodes;
  if (features.rows() != n || features.cols() != meta.feature_dim) {
    throw GraphError("graph: features are " + features.shape_string() + ", expected " +
                     std::to_string(n) + "x" + std::to_string(meta.feature_dim));
  }
  if (labels.rows() != n || labels.cols() != meta.label_count) {
    throw GraphError("graph: labels are " + labels.shape_string() + ", expected " +
                     std::to_string(n) + "x" + std::to_string(meta.label_count));
  }
  if (split.size() != n) throw GraphError("graph: split has wrong length");
  for (std::size_t v = 0; v < n; ++v) {
    double sum = 0;
    for (double y : labels.row(v)) {
      if (y != 0.0 && y != 1.0) throw GraphError("graph: label entries must be 0 or 1");
      sum += y;
    }
    if (meta.label_mode == LabelMode::kSingle && sum != 1.0) {
      throw GraphError("graph: node " + std::to_string(v) + " has " + std::to_string(sum) +
                       " active labels in single-label mode");
    }
  }

  std::vector<std::pair<NodeId, NodeId>> directed;
  directed.reserve(edges.size() * 2);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) {
      throw GraphError("graph: edge (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") out of range for " + std::to_string(n) + " nodes");
    }
    if (a == b) continue;
    directed.emplace_back(a, b);
    directed.emplace_back(b, a);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (auto [a, b] : directed) ++g.offsets_[a + 1];
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.targets_.reserve(directed.size());
  for (auto [a, b] : directed) g.targets_.push_back(b);

  meta.num_edges = directed.size() / 2;
  g.meta_ = meta;
  g.features_ = std::move(features);
  g.labels_ = std::move(labels);
  g.split_ = std::move(split);
  return g;
}

void Graph::check_node(NodeId v) const {
  if (v >= num_nodes()) {
    throw GraphError("graph: node id " + std::to_string(v) + " out of range for " +
                     std::to_string(num_nodes()) + " nodes");
  }
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  check_node(v);
  return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t Graph::degree(NodeId v) const {
  check_node(v);
  return offsets_[v + 1] - offsets_[v];
}

std::vector<NodeId> Graph::nodes_in(Split s) const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < split_.size(); ++v) {
    if (split_[v] == s) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edge_list() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(num_edges());
  for (std::size_t v = 0; v < num_nodes(); ++v) {
    for (std::size_t e = offsets_[v]; e < offsets_[v + 1]; ++e) {
      if (v < targets_[e]) out.emplace_back(static_cast<NodeId>(v), targets_[e]);
    }
  }
  return out;
}

Graph restrict_to_train(const Graph& g) {
  std::vector<std::pair<NodeId, NodeId>> kept;
  for (auto [a, b] : g.edge_list()) {
    if (g.split()[a] == Split::kTrain && g.split()[b] == Split::kTrain) kept.emplace_back(a, b);
  }
  return Graph::from_edges(g.meta(), kept, g.features(), g.labels(),
                           std::vector<Split>(g.split().begin(), g.split().end()));
}

}  // namespace sagerl::graph
