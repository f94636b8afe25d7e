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
#include <memory>
#include <vector>

#include "sagerl/graph/graph.hpp"
#include "sagerl/model/trainer.hpp"
#include "sagerl/rl/value_regressor.hpp"
#include "sagerl/rl/value_table.hpp"

namespace sagerl::rl {

enum class RegressorOptimizer { kAdam, kSgd };

struct RLConfig {
  double gamma = 0.9;
  RewardMode reward_mode = RewardMode::kAllHop;
  std::size_t fit_epochs = 50;
  std::size_t fit_batch_size = 512;
  double fit_learning_rate = 0.001;
  RegressorOptimizer optimizer = RegressorOptimizer::kAdam;

  void validate() const;
};

/// One regression sample: the pair (v, u) and its target value.
struct ValueSample {
  NodeId v;
  NodeId u;
  double target;
};

/// Every visited pair of the table with target G_sum / C, in (v, u) order.
std::vector<ValueSample> value_samples(const ValueTable& table);

struct FitHistory {
  double initial_mse = 0;
  std::vector<double> epoch_mse;  // full-pass MSE after each epoch
};

/// Mean of (Ĝ(v, u) − target)² over the samples.
double regressor_mse(const ValueRegressor& reg, const std::vector<ValueSample>& samples,
                     const nd::Matrix<double>& features);

/// Squared-error fit by shuffled mini-batches. Marks the regressor fitted.
FitHistory fit_regressor(ValueRegressor& reg, const std::vector<ValueSample>& samples,
                         const nd::Matrix<double>& features, const RLConfig& cfg,
                         std::uint64_t seed);

FitHistory fit_regressor(ValueRegressor& reg, const ValueTable& table,
                         const nd::Matrix<double>& features, const RLConfig& cfg,
                         std::uint64_t seed);

struct PhaseMetrics {
  double test_f1 = 0;
  double test_seconds = 0;  // sampling + forward + decision for all test nodes
};

template <typename T>
struct PipelineResult {
  model::TrainResult<T> uniform;   // phase A
  model::TrainResult<T> learned;   // phase C
  std::shared_ptr<const ValueRegressor> regressor;
  ValueTable table;
  FitHistory fit;
  PhaseMetrics uniform_metrics;
  PhaseMetrics learned_metrics;
  std::size_t episodes = 0;
};

/// Phase A: uniform training that streams episodes into a fresh table.
/// Phase B: regressor fit on the table.
/// Phase C: fresh training, same config and init seed, with the value
/// sampler. Both models are evaluated on the test split.
template <typename T>
PipelineResult<T> run_pipeline(const graph::Graph& g, model::SageConfig sage_cfg,
                               const RLConfig& rl_cfg, std::uint64_t seed);

template <typename T>
struct UniformResult {
  model::TrainResult<T> train;
  PhaseMetrics metrics;
};

/// Phase A alone, without episode collection, seeded as in run_pipeline.
template <typename T>
UniformResult<T> run_uniform(const graph::Graph& g, const model::SageConfig& sage_cfg,
                             std::uint64_t seed);

}  // namespace sagerl::rl
