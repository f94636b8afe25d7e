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

#include "sagerl/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "sagerl/graph/dataset_io.hpp"
#include "sagerl/model/sage_model.hpp"

namespace sagerl::bench {
namespace fs = std::filesystem;
namespace {

void check_keys(const nlohmann::json& j, const char* where, std::set<std::string> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

template <typename V>
void read(const nlohmann::json& j, const char* key, V& out) {
  if (j.contains(key)) out = j.at(key).get<V>();
}

graph::SyntheticSpec parse_synthetic(const nlohmann::json& j) {
  check_keys(j, "synthetic", {"num_nodes", "num_communities", "feature_dim", "informative_fraction",
                              "mean_degree", "noise_std", "train_fraction", "val_fraction", "seed"});
  graph::SyntheticSpec s;
  read(j, "num_nodes", s.num_nodes);
  read(j, "num_communities", s.num_communities);
  read(j, "feature_dim", s.feature_dim);
  read(j, "informative_fraction", s.informative_fraction);
  read(j, "mean_degree", s.mean_degree);
  read(j, "noise_std", s.noise_std);
  read(j, "train_fraction", s.train_fraction);
  read(j, "val_fraction", s.val_fraction);
  read(j, "seed", s.seed);
  return s;
}

nlohmann::ordered_json synthetic_to_json(const graph::SyntheticSpec& s) {
  return {{"num_nodes", s.num_nodes},         {"num_communities", s.num_communities},
          {"feature_dim", s.feature_dim},     {"informative_fraction", s.informative_fraction},
          {"mean_degree", s.mean_degree},     {"noise_std", s.noise_std},
          {"train_fraction", s.train_fraction}, {"val_fraction", s.val_fraction},
          {"seed", s.seed}};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dataset_dir.has_value() == synthetic.has_value()) {
    throw ConfigError("config: exactly one of \"dataset\" or \"synthetic\" is required");
  }
  if (seeds.empty()) throw ConfigError("config: seeds must be nonempty");
  try {
    sage.validate();
    rl.validate();
    if (synthetic) synthetic->validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig parse_config(const nlohmann::json& j, const fs::path& base_dir) {
  ExperimentConfig cfg;
  try {
    check_keys(j, "config",
               {"dataset", "synthetic", "name", "model", "rl", "sampler", "seeds", "output", "precision"});
    if (j.contains("dataset")) {
      fs::path p = j.at("dataset").get<std::string>();
      cfg.dataset_dir = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
      cfg.dataset_name = p.filename().string();
    }
    if (j.contains("synthetic")) {
      cfg.synthetic = parse_synthetic(j.at("synthetic"));
      cfg.dataset_name = "synthetic";
    }
    read(j, "name", cfg.dataset_name);
    if (j.contains("model")) {
      const auto& m = j.at("model");
      check_keys(m, "model", {"layers", "hidden_dim", "aggregator", "fanouts", "learning_rate",
                              "batch_size", "epochs", "aux_heads", "track_validation"});
      read(m, "fanouts", cfg.sage.fanouts);
      cfg.sage.layers = cfg.sage.fanouts.size();
      read(m, "layers", cfg.sage.layers);
      if (m.contains("layers") && !m.contains("fanouts")) {
        // Reference sample size is 30 at every hop.
        cfg.sage.fanouts.assign(cfg.sage.layers, 30);
      }
      read(m, "hidden_dim", cfg.sage.hidden_dim);
      if (m.contains("aggregator")) {
        cfg.sage.aggregator = model::aggregator_from_string(m.at("aggregator").get<std::string>());
      }
      read(m, "learning_rate", cfg.sage.learning_rate);
      read(m, "batch_size", cfg.sage.batch_size);
      read(m, "epochs", cfg.sage.epochs);
      read(m, "aux_heads", cfg.sage.aux_heads);
      read(m, "track_validation", cfg.sage.track_validation);
    }
    if (j.contains("rl")) {
      const auto& r = j.at("rl");
      check_keys(r, "rl", {"gamma", "reward_mode", "fit_epochs", "fit_batch_size",
                           "fit_learning_rate", "optimizer"});
      read(r, "gamma", cfg.rl.gamma);
      if (r.contains("reward_mode")) {
        cfg.rl.reward_mode = rl::reward_mode_from_string(r.at("reward_mode").get<std::string>());
      }
      read(r, "fit_epochs", cfg.rl.fit_epochs);
      read(r, "fit_batch_size", cfg.rl.fit_batch_size);
      read(r, "fit_learning_rate", cfg.rl.fit_learning_rate);
      if (r.contains("optimizer")) {
        const auto o = r.at("optimizer").get<std::string>();
        if (o == "adam") {
          cfg.rl.optimizer = rl::RegressorOptimizer::kAdam;
        } else if (o == "sgd") {
          cfg.rl.optimizer = rl::RegressorOptimizer::kSgd;
        } else {
          throw ConfigError("rl: optimizer must be \"adam\" or \"sgd\"");
        }
      }
    }
    if (j.contains("sampler")) {
      const auto s = j.at("sampler").get<std::string>();
      if (s == "uniform") {
        cfg.sampler = SamplerMode::kUniform;
      } else if (s == "rl") {
        cfg.sampler = SamplerMode::kRl;
      } else {
        throw ConfigError("config: sampler must be \"uniform\" or \"rl\"");
      }
    }
    read(j, "seeds", cfg.seeds);
    if (j.contains("output")) {
      fs::path p = j.at("output").get<std::string>();
      cfg.output = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
    }
    if (j.contains("precision")) {
      const auto p = j.at("precision").get<std::string>();
      if (p == "float32") {
        cfg.precision = Precision::kFloat32;
      } else if (p == "float64") {
        cfg.precision = Precision::kFloat64;
      } else {
        throw ConfigError("config: precision must be \"float32\" or \"float64\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string() + ": cannot open config");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
  return parse_config(j, file.parent_path());
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  if (cfg.dataset_dir) j["dataset"] = cfg.dataset_name;
  if (cfg.synthetic) j["synthetic"] = synthetic_to_json(*cfg.synthetic);
  j["model"] = {{"layers", cfg.sage.layers},
                {"hidden_dim", cfg.sage.hidden_dim},
                {"aggregator", model::to_string(cfg.sage.aggregator)},
                {"fanouts", cfg.sage.fanouts},
                {"learning_rate", cfg.sage.learning_rate},
                {"batch_size", cfg.sage.batch_size},
                {"epochs", cfg.sage.epochs}};
  j["rl"] = {{"gamma", cfg.rl.gamma},
             {"reward_mode", rl::to_string(cfg.rl.reward_mode)},
             {"fit_epochs", cfg.rl.fit_epochs},
             {"fit_batch_size", cfg.rl.fit_batch_size},
             {"fit_learning_rate", cfg.rl.fit_learning_rate},
             {"optimizer", cfg.rl.optimizer == rl::RegressorOptimizer::kAdam ? "adam" : "sgd"}};
  j["precision"] = cfg.precision == Precision::kFloat32 ? "float32" : "float64";
  return j;
}

graph::Graph load_graph(const ExperimentConfig& cfg) {
  if (cfg.synthetic) return graph::generate_synthetic(*cfg.synthetic);
  return graph::load_dataset(*cfg.dataset_dir);
}

std::string method_tag(const model::SageConfig& cfg, bool learned) {
  std::string tag = learned ? "*GS_" : "GS_";
  tag += cfg.aggregator == model::Aggregator::kMeanConcat ? "A1_[" : "A2_[";
  for (std::size_t i = 0; i < cfg.fanouts.size(); ++i) {
    if (i) tag += ",";
    tag += std::to_string(cfg.fanouts[i]);
  }
  tag += "]_" + std::to_string(cfg.epochs) + "ep";
  return tag;
}

std::size_t worker_threads() {
  if (const char* env = std::getenv("SAGERL_NUM_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct SeedOutcome {
  rl::PhaseMetrics uniform;
  rl::PhaseMetrics learned;
  std::size_t param_bytes = 0;
};

template <typename T>
SeedOutcome run_seed(const graph::Graph& g, const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.sampler == SamplerMode::kUniform) {
    auto res = rl::run_uniform<T>(g, cfg.sage, seed);
    return {res.metrics, {}, model::param_bytes(res.train.params)};
  }
  auto res = rl::run_pipeline<T>(g, cfg.sage, cfg.rl, seed);
  return {res.uniform_metrics, res.learned_metrics, model::param_bytes(res.learned.params)};
}

}  // namespace

std::vector<ResultRow> run_bench(const ExperimentConfig& cfg, const graph::Graph& g) {
  cfg.validate();
  std::vector<SeedOutcome> outcomes(cfg.seeds.size());
  std::vector<std::exception_ptr> errors(cfg.seeds.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cfg.seeds.size();) {
      try {
        outcomes[i] = cfg.precision == Precision::kFloat32 ? run_seed<float>(g, cfg, cfg.seeds[i])
                                                           : run_seed<double>(g, cfg, cfg.seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min(worker_threads(), cfg.seeds.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const auto echo = config_to_json(cfg);
  const auto make_row = [&](bool learned) {
    ResultRow r;
    r.method = method_tag(cfg.sage, learned);
    r.dataset = cfg.dataset_name;
    r.sampler = learned ? "rl" : "uniform";
    r.seeds = cfg.seeds;
    std::vector<double> secs;
    for (const auto& o : outcomes) {
      const auto& m = learned ? o.learned : o.uniform;
      r.f1_per_seed.push_back(m.test_f1);
      secs.push_back(m.test_seconds);
    }
    r.f1_mean = mean(r.f1_per_seed);
    r.test_seconds = mean(secs);
    r.param_mb = static_cast<double>(outcomes.front().param_bytes) / (1024.0 * 1024.0);
    r.epochs = cfg.sage.epochs;
    r.config = echo;
    return r;
  };
  if (cfg.sampler == SamplerMode::kUniform) return {make_row(false)};
  return {make_row(false), make_row(true)};
}

}  // namespace sagerl::bench
