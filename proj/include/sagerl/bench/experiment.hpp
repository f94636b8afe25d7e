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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sagerl/bench/report.hpp"
#include "sagerl/graph/synthetic.hpp"
#include "sagerl/model/config.hpp"
#include "sagerl/rl/pipeline.hpp"

namespace sagerl::bench {

enum class SamplerMode { kUniform, kRl };
enum class Precision { kFloat32, kFloat64 };

/// Every field defaults to the reference hyperparameters, so a minimal
/// config only names the dataset.
struct ExperimentConfig {
  std::optional<std::filesystem::path> dataset_dir;
  std::optional<graph::SyntheticSpec> synthetic;
  std::string dataset_name;
  model::SageConfig sage;
  rl::RLConfig rl;
  SamplerMode sampler = SamplerMode::kRl;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::filesystem::path output = "out";
  Precision precision = Precision::kFloat32;

  void validate() const;
};

/// Invalid or unreadable configuration; the CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative dataset paths resolve against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& file);
/// Fully-resolved config, echoed into every report row.
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

graph::Graph load_graph(const ExperimentConfig& cfg);

/// Method tag in the style "GS_A1_[30,30]_10ep"; rl rows get a "*" prefix.
std::string method_tag(const model::SageConfig& cfg, bool learned);

/// Worker cap from SAGERL_NUM_THREADS (default: hardware concurrency).
std::size_t worker_threads();

/// run_pipeline for every seed (concurrently, up to worker_threads()),
/// then one uniform row and one rl row.
std::vector<ResultRow> run_bench(const ExperimentConfig& cfg, const graph::Graph& g);

}  // namespace sagerl::bench
