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

#include "sagerl/rl/pipeline.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

#include "sagerl/sampling/rng.hpp"

namespace sagerl::rl {

void RLConfig::validate() const {
  if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("rl config: gamma must be in (0, 1]");
  if (fit_epochs < 1) throw std::invalid_argument("rl config: fit_epochs must be >= 1");
  if (fit_batch_size < 1) throw std::invalid_argument("rl config: fit_batch_size must be >= 1");
  if (!(fit_learning_rate > 0)) {
    throw std::invalid_argument("rl config: fit_learning_rate must be > 0");
  }
}

std::vector<ValueSample> value_samples(const ValueTable& table) {
  std::vector<ValueSample> out;
  out.reserve(table.size());
  for (const auto& row : table.sorted_rows()) {
    out.push_back({row.v, row.u, row.entry.return_sum / static_cast<double>(row.entry.visits)});
  }
  return out;
}

double regressor_mse(const ValueRegressor& reg, const std::vector<ValueSample>& samples,
                     const nd::Matrix<double>& features) {
  if (samples.empty()) return 0;
  double acc = 0;
  for (const auto& s : samples) {
    const double e = reg.predict(features.row(s.v), features.row(s.u)) - s.target;
    acc += e * e;
  }
  return acc / static_cast<double>(samples.size());
}

FitHistory fit_regressor(ValueRegressor& reg, const std::vector<ValueSample>& samples,
                         const nd::Matrix<double>& features, const RLConfig& cfg,
                         std::uint64_t seed) {
  cfg.validate();
  if (samples.empty()) throw std::invalid_argument("fit_regressor: no visited pairs to fit");
  const std::size_t M = reg.feature_dim();
  if (features.cols() != M) {
    throw std::invalid_argument("fit_regressor: feature dimension does not match the regressor");
  }
  FitHistory hist;
  hist.initial_mse = regressor_mse(reg, samples, features);

  const nd::AdamConfig adam{cfg.fit_learning_rate};
  sampling::SplitMix64 rng(seed);
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto& w = reg.weight();
  auto& b = reg.bias();

  for (std::size_t epoch = 0; epoch < cfg.fit_epochs; ++epoch) {
    sampling::shuffle(order.begin(), order.end(), rng);
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.fit_batch_size) {
      const std::size_t end = std::min(order.size(), begin + cfg.fit_batch_size);
      const double scale = 2.0 / static_cast<double>(end - begin);
      w.zero_grad();
      b.zero_grad();
      double* gw = w.grad.data();
      for (std::size_t i = begin; i < end; ++i) {
        const auto& s = samples[order[i]];
        const auto xv = features.row(s.v);
        const auto xu = features.row(s.u);
        const double z = reg.preactivation(xv, xu);
        if (z <= 0) continue;  // ReLU floor: prediction is −1 with zero slope
        const double pred = ValueRegressor::from_preactivation(z);
        // d/dz (−e^z − t)² = 2(pred − t)·pred
        const double dz = scale * (pred - s.target) * pred;
        for (std::size_t j = 0; j < M; ++j) {
          gw[j] += dz * xv[j];
          gw[M + j] += dz * xu[j];
        }
        b.grad(0, 0) += dz;
      }
      if (cfg.optimizer == RegressorOptimizer::kAdam) {
        nd::adam_step(w, adam);
        nd::adam_step(b, adam);
      } else {
        nd::sgd_step(w, cfg.fit_learning_rate);
        nd::sgd_step(b, cfg.fit_learning_rate);
      }
    }
    hist.epoch_mse.push_back(regressor_mse(reg, samples, features));
  }
  w.zero_grad();
  b.zero_grad();
  reg.set_fitted();
  return hist;
}

FitHistory fit_regressor(ValueRegressor& reg, const ValueTable& table,
                         const nd::Matrix<double>& features, const RLConfig& cfg,
                         std::uint64_t seed) {
  if (table.empty()) throw std::invalid_argument("fit_regressor: value table is empty");
  return fit_regressor(reg, value_samples(table), features, cfg, seed);
}

namespace {

constexpr std::uint64_t kTrainStream = 1;
constexpr std::uint64_t kRegressorInitStream = 2;
constexpr std::uint64_t kRegressorFitStream = 3;
constexpr std::uint64_t kEvalStream = 4;

template <typename T>
PhaseMetrics evaluate_phase(const graph::Graph& g, const model::SageParams<T>& params,
                            const sampling::Sampler& sampler, std::uint64_t seed) {
  const auto test_nodes = g.nodes_in(graph::Split::kTest);
  PhaseMetrics m;
  if (test_nodes.empty()) return m;
  const auto t0 = std::chrono::steady_clock::now();
  const auto pred = model::predict(g, params, test_nodes, sampler, seed);
  m.test_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto truth = [&] {
    bench::LabelDecisions d(test_nodes.size(), g.meta().label_count);
    for (std::size_t i = 0; i < test_nodes.size(); ++i) {
      auto y = g.labels().row(test_nodes[i]);
      for (std::size_t c = 0; c < y.size(); ++c) d.at(i, c) = y[c] != 0.0;
    }
    return d;
  }();
  m.test_f1 = bench::micro_f1(pred, truth, g.meta().label_mode);
  return m;
}

}  // namespace

template <typename T>
PipelineResult<T> run_pipeline(const graph::Graph& g, model::SageConfig sage_cfg,
                               const RLConfig& rl_cfg, std::uint64_t seed) {
  rl_cfg.validate();
  if (rl_cfg.reward_mode == RewardMode::kAllHop) sage_cfg.aux_heads = true;
  sage_cfg.validate();
  const sampling::SplitMix64 root(seed);
  const std::uint64_t train_seed = root.fork(kTrainStream)();
  const std::uint64_t eval_seed = root.fork(kEvalStream)();

  PipelineResult<T> out;
  model::EpisodeSink sink{rl_cfg.reward_mode, [&](EpisodeRecord&& ep) {
                            out.table.record_episode(ep, rl_cfg.gamma);
                            ++out.episodes;
                          }};
  const auto uniform = sampling::Sampler::uniform();
  out.uniform = model::train<T>(g, sage_cfg, uniform, train_seed, &sink);

  auto reg = ValueRegressor::initialized(g.meta().feature_dim, root.fork(kRegressorInitStream)());
  out.fit = fit_regressor(reg, out.table, g.features(), rl_cfg, root.fork(kRegressorFitStream)());
  out.regressor = std::make_shared<const ValueRegressor>(std::move(reg));

  const auto learned = sampling::Sampler::value(out.regressor);
  out.learned = model::train<T>(g, sage_cfg, learned, train_seed);

  out.uniform_metrics = evaluate_phase(g, out.uniform.params, uniform, eval_seed);
  out.learned_metrics = evaluate_phase(g, out.learned.params, learned, eval_seed);
  return out;
}

template <typename T>
UniformResult<T> run_uniform(const graph::Graph& g, const model::SageConfig& sage_cfg,
                             std::uint64_t seed) {
  sage_cfg.validate();
  const sampling::SplitMix64 root(seed);
  const auto uniform = sampling::Sampler::uniform();
  UniformResult<T> out;
  out.train = model::train<T>(g, sage_cfg, uniform, root.fork(kTrainStream)());
  out.metrics = evaluate_phase(g, out.train.params, uniform, root.fork(kEvalStream)());
  return out;
}

template UniformResult<float> run_uniform(const graph::Graph&, const model::SageConfig&,
                                          std::uint64_t);
template UniformResult<double> run_uniform(const graph::Graph&, const model::SageConfig&,
                                           std::uint64_t);
template PipelineResult<float> run_pipeline(const graph::Graph&, model::SageConfig,
                                            const RLConfig&, std::uint64_t);
template PipelineResult<double> run_pipeline(const graph::Graph&, model::SageConfig,
                                             const RLConfig&, std::uint64_t);

}  // namespace sagerl::rl
