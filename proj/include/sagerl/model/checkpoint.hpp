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

#include <filesystem>
#include <optional>

#include "sagerl/graph/graph.hpp"
#include "sagerl/model/sage_model.hpp"
#include "sagerl/rl/value_regressor.hpp"

namespace sagerl::model {

/// Binary checkpoint, little-endian throughout:
///
///   "SAGERLCK" u32 version
///   config: u64 layers, u64 hidden, u8 aggregator, u64 fanouts[layers],
///           f64 lr, u64 batch, u64 epochs, u8 aux_heads
///   dims:   u64 M, u64 C, u8 label_mode
///   per parameter in declaration order: u64 rows, u64 cols, f32 data[]
///   optional "REGR" section: u64 M, u8 fitted, f64 W[2M], f64 b
///   "END!"
inline constexpr std::uint32_t kCheckpointVersion = 1;

template <typename T>
struct Checkpoint {
  SageConfig config;
  std::size_t feature_dim = 0;
  std::size_t num_labels = 0;
  nd::LabelMode label_mode = nd::LabelMode::kSingle;
  SageParams<T> params;
  std::optional<rl::ValueRegressor> regressor;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
void save_checkpoint(const std::filesystem::path& file, const Checkpoint<T>& ckpt);

template <typename T>
Checkpoint<T> load_checkpoint(const std::filesystem::path& file);

}  // namespace sagerl::model
