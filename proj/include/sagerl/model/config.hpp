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

#include <cstddef>
#include <string>
#include <vector>

namespace sagerl::model {

enum class Aggregator { kMeanConcat, kMeanAdd };

const char* to_string(Aggregator a);
Aggregator aggregator_from_string(const std::string& s);

struct SageConfig {
  std::size_t layers = 2;                    // K
  std::size_t hidden_dim = 512;              // M'
  Aggregator aggregator = Aggregator::kMeanConcat;
  std::vector<std::size_t> fanouts{30, 30};  // N^1..N^K
  double learning_rate = 0.01;
  std::size_t batch_size = 32;
  std::size_t epochs = 10;
  bool aux_heads = false;  // train the depth-1..K-1 classifier heads
  bool track_validation = true;

  void validate() const;
};

}  // namespace sagerl::model
