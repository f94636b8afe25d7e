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
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "sagerl/graph/graph.hpp"
#include "sagerl/rl/value_regressor.hpp"
#include "sagerl/sampling/rng.hpp"

namespace sagerl::sampling {

using graph::Graph;
using graph::NodeId;

/// Fixed fan-out sample tree. hops[0] holds the roots; hops[k] holds
/// |hops[k-1]|·fanouts[k-1] ids, child block i belonging to parent i.
struct SampleTree {
  std::vector<std::vector<NodeId>> hops;
  std::vector<std::size_t> fanouts;

  std::size_t depth() const { return fanouts.size(); }
  std::size_t num_roots() const { return hops.empty() ? 0 : hops[0].size(); }
  std::span<const NodeId> roots() const { return hops.at(0); }
  /// Children of position `parent` in hop k, drawn at hop k+1.
  std::span<const NodeId> children(std::size_t k, std::size_t parent) const;

  friend bool operator==(const SampleTree&, const SampleTree&) = default;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SamplerKind { kUniform, kValue };

/// Neighborhood sampler: uniform, or value-driven partitioned argmax over a
/// fitted regressor. The regressor is shared by every hop.
class Sampler {
 public:
  static Sampler uniform();
  /// Throws ConfigError when the regressor is not fitted.
  static Sampler value(std::shared_ptr<const rl::ValueRegressor> regressor);

  SamplerKind kind() const { return kind_; }
  const rl::ValueRegressor* regressor() const { return regressor_.get(); }

 private:
  SamplerKind kind_ = SamplerKind::kUniform;
  std::shared_ptr<const rl::ValueRegressor> regressor_;
};

/// N_k i.i.d. uniform draws with replacement from neighbors(v) for each v in
/// the frontier; a degree-0 node yields N_k copies of itself.
std::vector<NodeId> uniform_expand(const Graph& g, std::span<const NodeId> frontier,
                                   std::size_t fanout, SplitMix64& rng);

/// Random permutation of `ids` cut into `groups` contiguous chunks whose
/// sizes differ by at most one (larger chunks first).
std::vector<std::vector<NodeId>> partition_neighbors(std::span<const NodeId> ids,
                                                     std::size_t groups, SplitMix64& rng);

/// Value selection for one node. deg 0: fanout copies of v. deg ≤ fanout:
/// every neighbor once, then uniform fill. Otherwise the argmax of Ĝ(v, ·)
/// within each random group, ties to the lowest id. When `partition` is
/// given it receives the realized groups (empty on the small-degree paths).
std::vector<NodeId> value_select(const Graph& g, const rl::ValueRegressor& reg, NodeId v,
                                 std::size_t fanout, SplitMix64& rng,
                                 std::vector<std::vector<NodeId>>* partition = nullptr);

std::vector<NodeId> value_expand(const Graph& g, const rl::ValueRegressor& reg,
                                 std::span<const NodeId> frontier, std::size_t fanout,
                                 SplitMix64& rng);

std::vector<NodeId> expand(const Graph& g, const Sampler& sampler,
                           std::span<const NodeId> frontier, std::size_t fanout, SplitMix64& rng);

SampleTree build_tree(const Graph& g, std::span<const NodeId> roots, const Sampler& sampler,
                      std::span<const std::size_t> fanouts, SplitMix64& rng);

}  // namespace sagerl::sampling
