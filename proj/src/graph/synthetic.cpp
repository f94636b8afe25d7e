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

#include "sagerl/graph/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sagerl/sampling/rng.hpp"

namespace sagerl::graph {
namespace {

using sampling::SplitMix64;

struct Layout {
  std::vector<std::size_t> community;
  std::vector<bool> informative;
};

Layout assign_nodes(const SyntheticSpec& spec, SplitMix64 rng) {
  std::vector<NodeId> order(spec.num_nodes);
  std::iota(order.begin(), order.end(), NodeId{0});
  sampling::shuffle(order.begin(), order.end(), rng);

  Layout out{std::vector<std::size_t>(spec.num_nodes), std::vector<bool>(spec.num_nodes)};
  std::vector<std::vector<NodeId>> members(spec.num_communities);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto c = i % spec.num_communities;
    out.community[order[i]] = c;
    members[c].push_back(order[i]);
  }
  for (const auto& m : members) {
    const auto k = static_cast<std::size_t>(std::llround(spec.informative_fraction * m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) out.informative[m[i]] = i < k;
  }
  return out;
}

template <typename Pick>
NodeId pick_from(const std::vector<NodeId>& pool, SplitMix64& rng, Pick&& accept, bool& ok) {
  // Pools are large in practice; bounded retries guard against pools that
  // only contain rejected ids.
  for (int attempt = 0; attempt < 64 && !pool.empty(); ++attempt) {
    const NodeId u = pool[sampling::uniform_index(rng, pool.size())];
    if (accept(u)) {
      ok = true;
      return u;
    }
  }
  ok = false;
  return 0;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (!(informative_fraction >= 0.0 && informative_fraction <= 1.0)) {
    throw GraphError("synthetic: informative_fraction must be in [0, 1]");
  }
  if (num_communities < 2) throw GraphError("synthetic: need at least 2 communities");
  if (num_nodes < num_communities) throw GraphError("synthetic: fewer nodes than communities");
  if (feature_dim < 1) throw GraphError("synthetic: feature_dim must be >= 1");
  if (!(mean_degree >= 0)) throw GraphError("synthetic: mean_degree must be >= 0");
  if (!(noise_std >= 0)) throw GraphError("synthetic: noise_std must be >= 0");
  if (!(train_fraction > 0 && val_fraction >= 0 && train_fraction + val_fraction <= 1)) {
    throw GraphError("synthetic: split fractions must satisfy 0 < train, 0 <= val, sum <= 1");
  }
}

std::vector<bool> synthetic_informative_mask(const SyntheticSpec& spec) {
  spec.validate();
  return assign_nodes(spec, SplitMix64(spec.seed).fork(1)).informative;
}

Graph generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const SplitMix64 root(spec.seed);
  const auto layout = assign_nodes(spec, root.fork(1));
  const std::size_t n = spec.num_nodes;
  const std::size_t C = spec.num_communities;
  const std::size_t M = spec.feature_dim;

  std::vector<std::vector<NodeId>> informative(C), distractors(C), members(C);
  for (std::size_t v = 0; v < n; ++v) {
    const auto c = layout.community[v];
    members[c].push_back(static_cast<NodeId>(v));
    (layout.informative[v] ? informative : distractors)[c].push_back(static_cast<NodeId>(v));
  }

  nd::Matrix<double> centroids(C, M);
  {
    auto rng = root.fork(2);
    for (auto& x : centroids.flat()) x = 2.0 * sampling::uniform_unit(rng);
  }

  nd::Matrix<double> features(n, M);
  {
    auto rng = root.fork(3);
    for (std::size_t v = 0; v < n; ++v) {
      auto row = features.row(v);
      for (std::size_t j = 0; j < M; ++j) {
        const double z = sampling::standard_normal(rng);
        const double x = layout.informative[v]
                             ? centroids(layout.community[v], j) + spec.noise_std * z
                             : z;
        row[j] = static_cast<float>(x);  // float32 on disk
      }
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  {
    auto rng = root.fork(4);
    const auto stubs = static_cast<std::size_t>(std::llround(spec.mean_degree / 2.0));
    edges.reserve(n * stubs);
    for (std::size_t v = 0; v < n; ++v) {
      const auto cv = layout.community[v];
      const auto not_self = [v](NodeId u) { return u != v; };
      for (std::size_t s = 0; s < stubs; ++s) {
        bool ok = false;
        NodeId u = 0;
        if (sampling::uniform_unit(rng) < spec.informative_fraction) {
          u = pick_from(informative[cv], rng, not_self, ok);
          if (!ok) u = pick_from(members[cv], rng, not_self, ok);
        } else {
          const auto offset = 1 + sampling::uniform_index(rng, C - 1);
          const auto cu = (cv + offset) % C;
          const auto any = [](NodeId) { return true; };
          u = pick_from(distractors[cu], rng, any, ok);
          if (!ok) u = pick_from(members[cu], rng, any, ok);
        }
        if (ok) edges.emplace_back(static_cast<NodeId>(v), u);
      }
    }
  }

  std::vector<Split> split(n, Split::kTest);
  {
    auto rng = root.fork(5);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    sampling::shuffle(order.begin(), order.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(spec.train_fraction * n));
    const auto n_val = static_cast<std::size_t>(std::llround(spec.val_fraction * n));
    for (std::size_t i = 0; i < n; ++i) {
      split[order[i]] = i < n_train ? Split::kTrain : i < n_train + n_val ? Split::kVal : Split::kTest;
    }
  }

  nd::Matrix<double> labels(n, C);
  for (std::size_t v = 0; v < n; ++v) labels(v, layout.community[v]) = 1.0;

  DatasetMeta meta;
  meta.num_nodes = n;
  meta.feature_dim = M;
  meta.label_count = C;
  meta.label_mode = LabelMode::kSingle;
  return Graph::from_edges(meta, edges, std::move(features), std::move(labels), std::move(split));
}

}  // namespace sagerl::graph
