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

#include "sagerl/sampling/samplers.hpp"

#include <algorithm>

namespace sagerl::sampling {

std::span<const NodeId> SampleTree::children(std::size_t k, std::size_t parent) const {
  const auto n = fanouts.at(k);
  return std::span<const NodeId>(hops.at(k + 1)).subspan(parent * n, n);
}

Sampler Sampler::uniform() { return Sampler{}; }

Sampler Sampler::value(std::shared_ptr<const rl::ValueRegressor> regressor) {
  if (!regressor || !regressor->fitted()) {
    throw ConfigError("value sampler requires a fitted value regressor");
  }
  Sampler s;
  s.kind_ = SamplerKind::kValue;
  s.regressor_ = std::move(regressor);
  return s;
}

namespace {

void uniform_fill(std::span<const NodeId> nbrs, std::size_t count, SplitMix64& rng,
                  std::vector<NodeId>& out) {
  for (std::size_t s = 0; s < count; ++s) out.push_back(nbrs[uniform_index(rng, nbrs.size())]);
}

void uniform_select(const Graph& g, NodeId v, std::size_t fanout, SplitMix64& rng,
                    std::vector<NodeId>& out) {
  const auto nbrs = g.neighbors(v);
  if (nbrs.empty()) {
    out.insert(out.end(), fanout, v);
    return;
  }
  uniform_fill(nbrs, fanout, rng, out);
}

}  // namespace

std::vector<NodeId> uniform_expand(const Graph& g, std::span<const NodeId> frontier,
                                   std::size_t fanout, SplitMix64& rng) {
  const SplitMix64 base(rng());
  std::vector<NodeId> out;
  out.reserve(frontier.size() * fanout);
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    auto stream = base.fork(i);
    uniform_select(g, frontier[i], fanout, stream, out);
  }
  return out;
}

std::vector<std::vector<NodeId>> partition_neighbors(std::span<const NodeId> ids,
                                                     std::size_t groups, SplitMix64& rng) {
  std::vector<NodeId> perm(ids.begin(), ids.end());
  shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<NodeId>> out(groups);
  const std::size_t base = perm.size() / groups;
  const std::size_t extra = perm.size() % groups;
  std::size_t pos = 0;
  for (std::size_t gi = 0; gi < groups; ++gi) {
    const std::size_t len = base + (gi < extra ? 1 : 0);
    out[gi].assign(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                   perm.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return out;
}

std::vector<NodeId> value_select(const Graph& g, const rl::ValueRegressor& reg, NodeId v,
                                 std::size_t fanout, SplitMix64& rng,
                                 std::vector<std::vector<NodeId>>* partition) {
  std::vector<NodeId> out;
  out.reserve(fanout);
  if (partition) partition->clear();
  const auto nbrs = g.neighbors(v);
  if (nbrs.empty()) {
    out.assign(fanout, v);
    return out;
  }
  if (nbrs.size() <= fanout) {
    out.assign(nbrs.begin(), nbrs.end());
    uniform_fill(nbrs, fanout - nbrs.size(), rng, out);
    return out;
  }

  auto groups = partition_neighbors(nbrs, fanout, rng);
  const auto& x = g.features();
  const double root = reg.root_term(x.row(v));
  for (const auto& group : groups) {
    NodeId best = group.front();
    double best_score = rl::ValueRegressor::from_preactivation(root + reg.neighbor_term(x.row(best)));
    for (std::size_t i = 1; i < group.size(); ++i) {
      const NodeId u = group[i];
      const double s = rl::ValueRegressor::from_preactivation(root + reg.neighbor_term(x.row(u)));
      if (s > best_score || (s == best_score && u < best)) {
        best = u;
        best_score = s;
      }
    }
    out.push_back(best);
  }
  if (partition) *partition = std::move(groups);
  return out;
}

std::vector<NodeId> value_expand(const Graph& g, const rl::ValueRegressor& reg,
                                 std::span<const NodeId> frontier, std::size_t fanout,
                                 SplitMix64& rng) {
  if (reg.feature_dim() != g.meta().feature_dim) {
    throw ConfigError("value sampler: regressor feature dimension does not match the graph");
  }
  const SplitMix64 base(rng());
  std::vector<NodeId> out;
  out.reserve(frontier.size() * fanout);
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    auto stream = base.fork(i);
    auto picked = value_select(g, reg, frontier[i], fanout, stream);
    out.insert(out.end(), picked.begin(), picked.end());
  }
  return out;
}

std::vector<NodeId> expand(const Graph& g, const Sampler& sampler,
                           std::span<const NodeId> frontier, std::size_t fanout, SplitMix64& rng) {
  if (sampler.kind() == SamplerKind::kValue) {
    return value_expand(g, *sampler.regressor(), frontier, fanout, rng);
  }
  return uniform_expand(g, frontier, fanout, rng);
}

SampleTree build_tree(const Graph& g, std::span<const NodeId> roots, const Sampler& sampler,
                      std::span<const std::size_t> fanouts, SplitMix64& rng) {
  if (roots.empty()) throw std::invalid_argument("build_tree: no roots");
  SampleTree tree;
  tree.fanouts.assign(fanouts.begin(), fanouts.end());
  tree.hops.emplace_back(roots.begin(), roots.end());
  for (auto n : fanouts) {
    if (n == 0) throw std::invalid_argument("build_tree: fanouts must be >= 1");
    tree.hops.push_back(expand(g, sampler, tree.hops.back(), n, rng));
  }
  return tree;
}

}  // namespace sagerl::sampling
