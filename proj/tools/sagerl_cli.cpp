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

// sagerl: benchmark, train, evaluate, and synthesize datasets.
//
//   sagerl bench --config cfg.json [--seed N] [--out dir]
//   sagerl train --config cfg.json [--seed N] [--out dir]
//   sagerl eval  --config cfg.json --checkpoint model.ckpt [--seed N]
//   sagerl synth --config cfg.json [--out dir]
//
// Exit status: 0 success, 1 config error, 2 runtime failure.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sagerl/bench/experiment.hpp"
#include "sagerl/bench/report.hpp"
#include "sagerl/graph/dataset_io.hpp"
#include "sagerl/model/checkpoint.hpp"
#include "sagerl/rl/pipeline.hpp"

namespace {

using namespace sagerl;
namespace fs = std::filesystem;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::string checkpoint;
};

bench::ExperimentConfig resolve(const Options& opt) {
  auto cfg = bench::load_config(opt.config);
  if (opt.seed) cfg.seeds = {*opt.seed};
  if (opt.out) cfg.output = *opt.out;
  return cfg;
}

int cmd_bench(const Options& opt) {
  const auto cfg = resolve(opt);
  const auto g = bench::load_graph(cfg);
  const auto rows = bench::run_bench(cfg, g);
  const auto paths = bench::report(rows, cfg.output);
  std::cout << bench::render_table(rows, true);
  std::cout << "wrote " << paths.json.string() << "\n";
  return 0;
}

template <typename T>
int train_as(const bench::ExperimentConfig& cfg, const graph::Graph& g) {
  const std::uint64_t seed = cfg.seeds.front();
  model::Checkpoint<T> ckpt;
  ckpt.feature_dim = g.meta().feature_dim;
  ckpt.num_labels = g.meta().label_count;
  ckpt.label_mode = g.meta().label_mode;
  fs::create_directories(cfg.output);
  rl::PhaseMetrics metrics;
  if (cfg.sampler == bench::SamplerMode::kUniform) {
    auto res = rl::run_uniform<T>(g, cfg.sage, seed);
    ckpt.config = cfg.sage;
    ckpt.params = std::move(res.train.params);
    metrics = res.metrics;
  } else {
    auto res = rl::run_pipeline<T>(g, cfg.sage, cfg.rl, seed);
    ckpt.config = cfg.sage;
    if (cfg.rl.reward_mode == rl::RewardMode::kAllHop) ckpt.config.aux_heads = true;
    ckpt.params = std::move(res.learned.params);
    ckpt.regressor = *res.regressor;
    res.table.save(cfg.output / "value_table.txt");
    metrics = res.learned_metrics;
  }
  const auto file = cfg.output / "model.ckpt";
  model::save_checkpoint(file, ckpt);
  std::printf("test_f1 %.6f\ntest_seconds %.3f\nwrote %s\n", metrics.test_f1, metrics.test_seconds,
              file.string().c_str());
  return 0;
}

int cmd_train(const Options& opt) {
  const auto cfg = resolve(opt);
  const auto g = bench::load_graph(cfg);
  return cfg.precision == bench::Precision::kFloat32 ? train_as<float>(cfg, g)
                                                     : train_as<double>(cfg, g);
}

template <typename T>
int eval_as(const bench::ExperimentConfig& cfg, const graph::Graph& g, const fs::path& file) {
  auto ckpt = model::load_checkpoint<T>(file);
  if (ckpt.feature_dim != g.meta().feature_dim || ckpt.num_labels != g.meta().label_count) {
    throw bench::ConfigError(file.string() + ": checkpoint dimensions do not match the dataset");
  }
  const auto sampler =
      ckpt.regressor
          ? sampling::Sampler::value(std::make_shared<const rl::ValueRegressor>(*ckpt.regressor))
          : sampling::Sampler::uniform();
  const auto nodes = g.nodes_in(graph::Split::kTest);
  const double f1 = model::evaluate_f1(g, ckpt.params, nodes, sampler, cfg.seeds.front());
  std::printf("test_f1 %.6f\nsampler %s\n", f1, ckpt.regressor ? "rl" : "uniform");
  return 0;
}

int cmd_eval(const Options& opt) {
  const auto cfg = resolve(opt);
  const auto g = bench::load_graph(cfg);
  return cfg.precision == bench::Precision::kFloat32 ? eval_as<float>(cfg, g, opt.checkpoint)
                                                     : eval_as<double>(cfg, g, opt.checkpoint);
}

int cmd_synth(const Options& opt) {
  const auto cfg = resolve(opt);
  if (!cfg.synthetic) throw bench::ConfigError("synth: config has no \"synthetic\" section");
  const auto g = graph::generate_synthetic(*cfg.synthetic);
  graph::save_dataset(g, cfg.output);
  std::printf("wrote %s (%zu nodes, %zu edges)\n", cfg.output.string().c_str(),
              static_cast<std::size_t>(g.meta().num_nodes), static_cast<std::size_t>(g.meta().num_edges));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GraphSAGE with uniform and value-based neighbor samplers"};
  app.require_subcommand(1);
  Options opt;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON experiment config")->required();
    sub->add_option("--seed", opt.seed, "Run a single seed instead of the config's list");
    sub->add_option("--out", opt.out, "Output directory");
  };
  auto* bench_cmd = app.add_subcommand("bench", "Uniform vs. rl comparison over the seed list");
  auto* train_cmd = app.add_subcommand("train", "Train one seed and write a checkpoint");
  auto* eval_cmd = app.add_subcommand("eval", "Test-split micro-F1 of a checkpoint");
  auto* synth_cmd = app.add_subcommand("synth", "Write the config's synthetic dataset to disk");
  for (auto* sub : {bench_cmd, train_cmd, eval_cmd, synth_cmd}) common(sub);
  eval_cmd->add_option("--checkpoint", opt.checkpoint, "Checkpoint written by train")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*bench_cmd) return cmd_bench(opt);
    if (*train_cmd) return cmd_train(opt);
    if (*eval_cmd) return cmd_eval(opt);
    return cmd_synth(opt);
  } catch (const bench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
