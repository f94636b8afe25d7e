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
#include <span>
#include <vector>

#include "sagerl/bench/metrics.hpp"
#include "sagerl/model/sage_model.hpp"
#include "sagerl/rl/value_table.hpp"
#include "sagerl/sampling/samplers.hpp"

namespace sagerl::model {

/// Receives one EpisodeRecord per root of every training batch, computed
/// from the predictions made before that batch's update.
struct EpisodeSink {
  rl::RewardMode mode = rl::RewardMode::kLastHop;
  std::function<void(rl::EpisodeRecord&&)> emit;
};

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0;  // mean per training node
  double val_f1 = 0;      // NaN when validation tracking is off
};

struct TrainHistory {
  std::vector<EpochStats> epochs;
  std::size_t optimizer_steps = 0;
};

template <typename T>
struct TrainResult {
  SageParams<T> params;
  TrainHistory history;
};

/// Mini-batch training on the inductive view of `g` (val/test edges removed).
/// Validation F1 is measured on the full graph.
template <typename T>
TrainResult<T> train(const Graph& g, const SageConfig& cfg, const sampling::Sampler& sampler,
                     std::uint64_t seed, const EpisodeSink* sink = nullptr);

/// Label decisions for `nodes` from freshly sampled trees: argmax for
/// single-label data, logit > 0 for multi-label data.
template <typename T>
bench::LabelDecisions predict(const Graph& g, const SageParams<T>& params,
                              std::span<const graph::NodeId> nodes,
                              const sampling::Sampler& sampler, std::uint64_t seed,
                              std::size_t batch_size = 256);

/// Decisions from one logit matrix.
template <typename T>
bench::LabelDecisions decide(const Matrix<T>& logits, nd::LabelMode mode);

/// Micro-F1 of predict() against the true labels of `nodes`.
template <typename T>
double evaluate_f1(const Graph& g, const SageParams<T>& params,
                   std::span<const graph::NodeId> nodes, const sampling::Sampler& sampler,
                   std::uint64_t seed);

}  // namespace sagerl::model
