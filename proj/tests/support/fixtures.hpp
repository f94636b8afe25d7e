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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "sagerl/graph/graph.hpp"
#include "sagerl/model/sage_model.hpp"
#include "sagerl/nd/finite_diff.hpp"
#include "sagerl/nd/loss.hpp"
#include "sagerl/rl/value_table.hpp"
#include "sagerl/sampling/rng.hpp"
#include "sagerl/sampling/samplers.hpp"

namespace sagerl::testing {

/// Erdős–Rényi style graph with Gaussian features and random labels. Every
/// node is in the train split unless `mixed_split` is set.
inline graph::Graph random_graph(std::size_t n, std::size_t m, std::size_t c, nd::LabelMode mode,
                                 double edge_prob, std::uint64_t seed, bool mixed_split = false) {
  sampling::SplitMix64 rng(seed);
  std::vector<std::pair<graph::NodeId, graph::NodeId>> edges;
  for (graph::NodeId a = 0; a < n; ++a) {
    for (graph::NodeId b = a + 1; b < n; ++b) {
      if (sampling::uniform_unit(rng) < edge_prob) edges.emplace_back(a, b);
    }
  }
  nd::Matrix<double> x(n, m);
  for (auto& v : x.flat()) v = static_cast<double>(static_cast<float>(sampling::standard_normal(rng)));
  nd::Matrix<double> y(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == nd::LabelMode::kSingle) {
      y(i, sampling::uniform_index(rng, c)) = 1;
    } else {
      for (std::size_t j = 0; j < c; ++j) y(i, j) = sampling::uniform_unit(rng) < 0.5 ? 1 : 0;
    }
  }
  std::vector<graph::Split> split(n, graph::Split::kTrain);
  if (mixed_split) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = sampling::uniform_index(rng, 5);
      split[i] = r < 3 ? graph::Split::kTrain : r == 3 ? graph::Split::kVal : graph::Split::kTest;
    }
  }
  graph::DatasetMeta meta{n, m, c, mode, 0};
  return graph::Graph::from_edges(meta, edges, std::move(x), std::move(y), std::move(split));
}

/// |analytic − numeric| / scale for one parameter tensor.
struct GradCheck {
  double worst = 0;
  std::size_t tensors = 0;
};

/// Smallest |pre-activation| over every ReLU in the forward pass. A central
/// difference with step h is exact to O(h²) only when this stays well above h.
inline double kink_margin(const graph::Graph& g, const sampling::SampleTree& tree,
                          const model::SageParams<double>& params, std::size_t depth) {
  const auto fwd = model::forward(g, tree, params, depth);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& layer : fwd.cache.pre_act)
    for (const auto& m : layer)
      for (double z : m.flat()) margin = std::min(margin, std::abs(z));
  return margin;
}

/// Compares loss_and_backward gradients of head `depth`'s loss against
/// central differences for every parameter tensor of `params`.
inline GradCheck check_model_gradients(const graph::Graph& g, const sampling::SampleTree& tree,
                                       model::SageParams<double>& params, std::size_t depth,
                                       double h = 1e-5) {
  const auto mode = g.meta().label_mode;
  const auto labels = model::gather_labels<double>(g, tree.roots());
  const auto loss_of = [&] {
    const auto fwd = model::forward(g, tree, params, depth);
    return nd::classification_loss(mode, fwd.logits, labels).loss;
  };
  params.zero_grad();
  {
    const auto fwd = model::forward(g, tree, params, depth);
    model::loss_and_backward(fwd.logits, labels, mode, params, fwd.cache);
  }
  GradCheck out;
  params.for_each_param([&](nd::Param<double>& p) {
    std::vector<double> x(p.value.flat().begin(), p.value.flat().end());
    const auto f = [&](std::span<const double> v) {
      std::copy(v.begin(), v.end(), p.value.flat().begin());
      return loss_of();
    };
    const auto numeric = nd::finite_diff_grad(f, x, h);
    std::copy(x.begin(), x.end(), p.value.flat().begin());
    out.worst = std::max(out.worst, nd::max_relative_error(p.grad.flat(), numeric));
    ++out.tensors;
  });
  return out;
}

/// Brute-force accumulator: every occurrence of u in the first hop adds the
/// return once and K visits once.
struct ReplayOracle {
  std::map<std::pair<graph::NodeId, graph::NodeId>, std::pair<double, std::uint64_t>> cells;

  void add(const rl::EpisodeRecord& ep, double gamma) {
    double g = 0;
    for (std::size_t k = 0; k < ep.rewards.size(); ++k) g += std::pow(gamma, static_cast<double>(k)) * ep.rewards[k];
    for (auto u : ep.first_hop) {
      auto& c = cells[{ep.root, u}];
      c.first += g;
      c.second += ep.rewards.size();
    }
  }
};

/// Random episodes over `nodes` ids with K in {2, 3} and rewards in [-3, 0].
inline std::vector<rl::EpisodeRecord> random_episodes(std::size_t count, std::size_t nodes,
                                                      std::uint64_t seed) {
  sampling::SplitMix64 rng(seed);
  std::vector<rl::EpisodeRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    rl::EpisodeRecord ep;
    ep.root = static_cast<graph::NodeId>(sampling::uniform_index(rng, nodes));
    const std::size_t fan = 1 + sampling::uniform_index(rng, 5);
    for (std::size_t j = 0; j < fan; ++j) {
      ep.first_hop.push_back(static_cast<graph::NodeId>(sampling::uniform_index(rng, nodes)));
    }
    const std::size_t k = 2 + sampling::uniform_index(rng, 2);
    for (std::size_t j = 0; j < k; ++j) ep.rewards.push_back(-3.0 * sampling::uniform_unit(rng));
    out.push_back(std::move(ep));
  }
  return out;
}

/// Last-hop form of an episode: every reward but the final one zeroed.
inline rl::EpisodeRecord zero_prefix(rl::EpisodeRecord ep) {
  for (std::size_t k = 0; k + 1 < ep.rewards.size(); ++k) ep.rewards[k] = 0;
  return ep;
}

}  // namespace sagerl::testing
