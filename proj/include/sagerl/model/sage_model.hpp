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
#include <functional>
#include <vector>

#include "sagerl/graph/graph.hpp"
#include "sagerl/model/config.hpp"
#include "sagerl/nd/adam.hpp"
#include "sagerl/nd/loss.hpp"
#include "sagerl/sampling/samplers.hpp"

namespace sagerl::model {

using graph::Graph;
using nd::Matrix;
using nd::Param;
using sampling::SampleTree;

template <typename T>
struct AggregatorLayer {
  Param<T> w_neigh;  // M' × in
  Param<T> w_self;   // M' × in
};

template <typename T>
struct ClassifierHead {
  Param<T> weight;  // C × width
  Param<T> bias;    // 1 × C
};

/// Weights of a K-layer GraphSAGE stack plus one classifier head per depth.
/// heads[K-1] is the main classifier; the others are auxiliary and only
/// used to score partial-depth predictions.
template <typename T>
struct SageParams {
  Aggregator aggregator = Aggregator::kMeanConcat;
  std::size_t input_dim = 0;   // M
  std::size_t hidden_dim = 0;  // M'
  std::size_t num_labels = 0;  // C
  std::vector<std::size_t> fanouts;  // sample trees must match
  std::vector<AggregatorLayer<T>> layers;
  std::vector<ClassifierHead<T>> heads;

  /// Glorot-uniform weights, zero head biases.
  static SageParams init(const SageConfig& cfg, std::size_t input_dim, std::size_t num_labels,
                         std::uint64_t seed);

  std::size_t depth() const { return layers.size(); }
  /// Width of the embedding produced by layer k (1-based); 0 gives M.
  std::size_t output_width(std::size_t k) const;
  std::size_t parameter_count() const;

  void for_each_param(const std::function<void(Param<T>&)>& fn);
  void for_each_param(const std::function<void(const Param<T>&)>& fn) const;
  void zero_grad();
};

/// Parameter count as a pure function of the dimensions.
std::size_t sage_parameter_count(Aggregator agg, std::size_t input_dim, std::size_t hidden_dim,
                                 std::size_t num_labels, std::size_t layers);

/// Reported size at 4 bytes per parameter.
template <typename T>
std::size_t param_bytes(const SageParams<T>& params) {
  return 4 * params.parameter_count();
}

/// Activations of one forward pass. embeddings[k][j] is h^k for the nodes of
/// hop j, computed for j = 0..depth-k.
template <typename T>
struct ForwardCache {
  std::size_t depth = 0;
  std::vector<std::vector<Matrix<T>>> embeddings;  // [0..depth][levels]
  std::vector<std::vector<Matrix<T>>> neigh_mean;  // [1..depth], index k-1
  std::vector<std::vector<Matrix<T>>> pre_act;
  std::vector<std::vector<Matrix<T>>> post_relu;
  std::vector<std::size_t> fanouts;
  std::size_t num_roots = 0;
};

template <typename T>
struct ForwardResult {
  Matrix<T> logits;  // roots × C, head `depth`
  ForwardCache<T> cache;
};

/// Runs layers 1..depth over the tree truncated at `depth` and applies head
/// `depth` to the root embeddings.
template <typename T>
ForwardResult<T> forward(const Graph& g, const SampleTree& tree, const SageParams<T>& params,
                         std::size_t depth);

/// Logits of head d (1 ≤ d ≤ cache.depth) applied to the cached h^d of the roots.
template <typename T>
Matrix<T> head_logits(const SageParams<T>& params, const ForwardCache<T>& cache, std::size_t d);

/// Root label rows of the tree, in working precision.
template <typename T>
Matrix<T> gather_labels(const Graph& g, std::span<const graph::NodeId> nodes);

/// Summed classification loss of the cached depth's head; accumulates
/// gradients into that head and every aggregator layer it reaches.
template <typename T>
T loss_and_backward(const Matrix<T>& logits, const Matrix<T>& labels, nd::LabelMode mode,
                    SageParams<T>& params, const ForwardCache<T>& cache);

/// Loss of auxiliary head d; gradients reach head d only.
template <typename T>
T aux_loss_and_backward(const Matrix<T>& labels, nd::LabelMode mode, SageParams<T>& params,
                        const ForwardCache<T>& cache, std::size_t d);

}  // namespace sagerl::model
