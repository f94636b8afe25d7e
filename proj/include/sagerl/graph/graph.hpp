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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sagerl/nd/loss.hpp"
#include "sagerl/nd/matrix.hpp"

namespace sagerl::graph {

using NodeId = std::uint32_t;
using nd::LabelMode;

enum class Split : std::uint8_t { kTrain, kVal, kTest };

const char* to_string(Split s);
const char* to_string(LabelMode m);

struct DatasetMeta {
  std::size_t num_nodes = 0;
  std::size_t feature_dim = 0;   // M
  std::size_t label_count = 0;   // C
  LabelMode label_mode = LabelMode::kSingle;
  std::size_t num_edges = 0;     // undirected, after cleanup

  void validate() const;
  friend bool operator==(const DatasetMeta&, const DatasetMeta&) = default;
};

/// Raised for malformed graph content or dataset files.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable undirected graph in CSR form with node features, labels and
/// the train/val/test split. Safe for concurrent reads.
class Graph {
 public:
  Graph() = default;

  /// Builds the CSR from an arbitrary edge list: edges are symmetrized,
  /// duplicates collapsed, self-loops dropped. Isolated nodes are kept.
  static Graph from_edges(DatasetMeta meta, std::span<const std::pair<NodeId, NodeId>> edges,
                          nd::Matrix<double> features, nd::Matrix<double> labels,
                          std::vector<Split> split);

  std::size_t num_nodes() const { return meta_.num_nodes; }
  /// Count of undirected edges.
  std::size_t num_edges() const { return targets_.size() / 2; }
  const DatasetMeta& meta() const { return meta_; }

  std::span<const NodeId> neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const;

  std::span<const std::size_t> csr_offsets() const { return offsets_; }
  std::span<const NodeId> csr_targets() const { return targets_; }
  const nd::Matrix<double>& features() const { return features_; }
  const nd::Matrix<double>& labels() const { return labels_; }
  std::span<const Split> split() const { return split_; }

  std::vector<NodeId> nodes_in(Split s) const;

  /// Each undirected edge once, as (a, b) with a < b, in CSR order.
  std::vector<std::pair<NodeId, NodeId>> edge_list() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_node(NodeId v) const;

  DatasetMeta meta_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  nd::Matrix<double> features_;
  nd::Matrix<double> labels_;
  std::vector<Split> split_;
};

/// Inductive training view: drops every edge touching a val or test node.
/// Feature, label and split rows are kept.
Graph restrict_to_train(const Graph& g);

}  // namespace sagerl::graph
