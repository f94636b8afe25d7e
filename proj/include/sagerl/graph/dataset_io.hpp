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

#include "sagerl/graph/graph.hpp"

namespace sagerl::graph {

/// Loads a dataset directory:
///
///   meta.json     {"num_nodes", "feature_dim", "num_labels", "label_mode"}
///   edges.txt     "a b" per line, 0-based ids
///   features.tsv  one row of M tab-separated floats per node
///   features.f32  optional; row-major little-endian float32, preferred
///   labels.tsv    single: one id per line; multi: space-separated ids
///   split.tsv     train | val | test per line
///
/// Errors are GraphError with "file:line: reason".
Graph load_dataset(const std::filesystem::path& dir);

/// Writes the text layout above. Features are written at float32 precision.
void save_dataset(const Graph& g, const std::filesystem::path& dir, bool binary_features = false);

}  // namespace sagerl::graph
