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

#include "sagerl/model/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sagerl/nd/ops.hpp"
#include "sagerl/rl/reward.hpp"

namespace sagerl::model {
namespace {

using graph::NodeId;
using sampling::SplitMix64;

// Fixed stream ids below the root seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kShuffleStream = 2;
constexpr std::uint64_t kTreeStream = 3;
constexpr std::uint64_t kValidationStream = 4;

template <typename T>
Matrix<double> probabilities(const Matrix<T>& logits, nd::LabelMode mode) {
  auto p = mode == nd::LabelMode::kSingle ? nd::softmax_rows(logits) : nd::sigmoid(logits);
  return nd::cast<double>(p);
}

template <typename T>
void emit_episodes(const Graph& g, const SageParams<T>& params, const SampleTree& tree,
                   const ForwardCache<T>& cache, const Matrix<T>& final_logits,
                   const EpisodeSink& sink) {
  const auto mode = g.meta().label_mode;
  const std::size_t K = cache.depth;
  std::vector<Matrix<double>> probs(K);
  probs[K - 1] = probabilities(final_logits, mode);
  if (sink.mode == rl::RewardMode::kAllHop) {
    for (std::size_t d = 1; d < K; ++d) probs[d - 1] = probabilities(head_logits(params, cache, d), mode);
  }
  const auto roots = tree.roots();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    rl::EpisodeRecord ep;
    ep.root = roots[i];
    auto kids = tree.children(0, i);
    ep.first_hop.assign(kids.begin(), kids.end());
    ep.rewards.assign(K, 0.0);
    const auto y = g.labels().row(roots[i]);
    for (std::size_t d = 1; d <= K; ++d) {
      if (probs[d - 1].empty()) continue;
      ep.rewards[d - 1] = rl::per_step_reward(y, probs[d - 1].row(i), mode);
    }
    sink.emit(std::move(ep));
  }
}

}  // namespace

template <typename T>
bench::LabelDecisions decide(const Matrix<T>& logits, nd::LabelMode mode) {
  bench::LabelDecisions d(logits.rows(), logits.cols());
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    auto row = logits.row(r);
    if (mode == nd::LabelMode::kSingle) {
      const auto best = std::max_element(row.begin(), row.end()) - row.begin();
      d.at(r, static_cast<std::size_t>(best)) = 1;
    } else {
      for (std::size_t c = 0; c < row.size(); ++c) d.at(r, c) = row[c] > T(0);
    }
  }
  return d;
}

template <typename T>
bench::LabelDecisions predict(const Graph& g, const SageParams<T>& params,
                              std::span<const NodeId> nodes, const sampling::Sampler& sampler,
                              std::uint64_t seed, std::size_t batch_size) {
  bench::LabelDecisions out(nodes.size(), params.num_labels);
  SplitMix64 rng(seed);
  for (std::size_t begin = 0; begin < nodes.size(); begin += batch_size) {
    const auto batch = nodes.subspan(begin, std::min(batch_size, nodes.size() - begin));
    auto tree = sampling::build_tree(g, batch, sampler, params.fanouts, rng);
    auto fwd = forward(g, tree, params, params.depth());
    auto d = decide(fwd.logits, g.meta().label_mode);
    std::copy(d.data.begin(), d.data.end(),
              out.data.begin() + static_cast<std::ptrdiff_t>(begin * params.num_labels));
  }
  return out;
}

template <typename T>
double evaluate_f1(const Graph& g, const SageParams<T>& params, std::span<const NodeId> nodes,
                   const sampling::Sampler& sampler, std::uint64_t seed) {
  const auto pred = predict(g, params, nodes, sampler, seed);
  bench::LabelDecisions truth(nodes.size(), g.meta().label_count);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto y = g.labels().row(nodes[i]);
    for (std::size_t c = 0; c < y.size(); ++c) truth.at(i, c) = y[c] != 0.0;
  }
  return bench::micro_f1(pred, truth, g.meta().label_mode);
}

template <typename T>
TrainResult<T> train(const Graph& g, const SageConfig& cfg, const sampling::Sampler& sampler,
                     std::uint64_t seed, const EpisodeSink* sink) {
  cfg.validate();
  if (sink && sink->mode == rl::RewardMode::kAllHop && !cfg.aux_heads && cfg.layers > 1) {
    throw std::invalid_argument("train: all-hop rewards need aux_heads enabled");
  }
  const auto train_graph = graph::restrict_to_train(g);
  auto train_nodes = g.nodes_in(graph::Split::kTrain);
  if (train_nodes.empty()) throw std::invalid_argument("train: the train split is empty");
  const auto val_nodes = g.nodes_in(graph::Split::kVal);
  const auto mode = g.meta().label_mode;

  const SplitMix64 root(seed);
  TrainResult<T> result{
      SageParams<T>::init(cfg, g.meta().feature_dim, g.meta().label_count, root.fork(kInitStream)()),
      {}};
  auto& params = result.params;
  SplitMix64 shuffle_rng = root.fork(kShuffleStream);
  SplitMix64 tree_rng = root.fork(kTreeStream);
  const nd::AdamConfig adam{cfg.learning_rate};

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    sampling::shuffle(train_nodes.begin(), train_nodes.end(), shuffle_rng);
    double epoch_loss = 0;
    for (std::size_t begin = 0; begin < train_nodes.size(); begin += cfg.batch_size) {
      const std::span<const NodeId> batch(
          train_nodes.data() + begin, std::min(cfg.batch_size, train_nodes.size() - begin));
      auto tree = sampling::build_tree(train_graph, batch, sampler, cfg.fanouts, tree_rng);
      auto fwd = forward(train_graph, tree, params, cfg.layers);
      if (sink) emit_episodes(train_graph, params, tree, fwd.cache, fwd.logits, *sink);

      const auto labels = gather_labels<T>(train_graph, batch);
      params.zero_grad();
      epoch_loss += static_cast<double>(loss_and_backward(fwd.logits, labels, mode, params, fwd.cache));
      if (cfg.aux_heads) {
        for (std::size_t d = 1; d < cfg.layers; ++d) {
          aux_loss_and_backward(labels, mode, params, fwd.cache, d);
        }
      }
      params.for_each_param([&adam](Param<T>& p) { nd::adam_step(p, adam); });
      ++result.history.optimizer_steps;
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = epoch_loss / static_cast<double>(train_nodes.size());
    stats.val_f1 = std::numeric_limits<double>::quiet_NaN();
    if (cfg.track_validation && !val_nodes.empty()) {
      stats.val_f1 = evaluate_f1(g, params, val_nodes, sampler, root.fork(kValidationStream).fork(epoch)());
    }
    result.history.epochs.push_back(stats);
  }
  params.zero_grad();
  return result;
}

#define SAGERL_INSTANTIATE_TRAINER(T)                                                          \
  template bench::LabelDecisions decide(const Matrix<T>&, nd::LabelMode);                      \
  template bench::LabelDecisions predict(const Graph&, const SageParams<T>&,                   \
                                         std::span<const NodeId>, const sampling::Sampler&,    \
                                         std::uint64_t, std::size_t);                          \
  template double evaluate_f1(const Graph&, const SageParams<T>&, std::span<const NodeId>,     \
                              const sampling::Sampler&, std::uint64_t);                        \
  template TrainResult<T> train(const Graph&, const SageConfig&, const sampling::Sampler&,     \
                                std::uint64_t, const EpisodeSink*);

SAGERL_INSTANTIATE_TRAINER(float)
SAGERL_INSTANTIATE_TRAINER(double)

}  // namespace sagerl::model
