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

#include "sagerl/graph/graph.hpp"

namespace sagerl::graph {

/// Planted-informative-neighbor graph.
///
/// Each community owns a centroid with coordinates in [0, 2). A fraction
/// `informative_fraction` of each community's nodes are informative: their
/// features are centroid + noise_std·N(0, I). The rest are distractors with
/// features drawn from N(0, I) whatever their community.
///
/// Every node emits mean_degree/2 edge stubs. A stub goes to an informative
/// node of the same community with probability `informative_fraction`,
/// otherwise to a distractor of another community, so the expected fraction
/// of same-community edges equals `informative_fraction`.
struct SyntheticSpec {
  std::size_t num_nodes = 2000;
  std::size_t num_communities = 4;
  std::size_t feature_dim = 32;
  double informative_fraction = 0.5;  // p_inf
  double mean_degree = 20;
  double noise_std = 1.0;
  double train_fraction = 0.6;
  double val_fraction = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

Graph generate_synthetic(const SyntheticSpec& spec);

/// Per-node flag: true for informative nodes. Recomputed from `spec` with
/// the same stream layout as generate_synthetic.
std::vector<bool> synthetic_informative_mask(const SyntheticSpec& spec);

}  // namespace sagerl::graph
