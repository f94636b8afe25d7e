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
#include <vector>

#include "sagerl/nd/loss.hpp"
#include "sagerl/nd/matrix.hpp"

namespace sagerl::bench {

/// Binary node × label decisions.
struct LabelDecisions {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> data;

  LabelDecisions() = default;
  LabelDecisions(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::uint8_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::uint8_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  friend bool operator==(const LabelDecisions&, const LabelDecisions&) = default;
};

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
};

ConfusionCounts pooled_counts(const LabelDecisions& predicted, const LabelDecisions& truth);

/// 2·TP / (2·TP + FP + FN) pooled over every (node, label) decision.
/// Returns 0 (and logs a warning to stderr) when nothing is positive.
/// In single-label mode this equals accuracy.
double micro_f1(const LabelDecisions& predicted, const LabelDecisions& truth, nd::LabelMode mode);

/// Threshold a dense label matrix (0/1 entries) into decisions.
LabelDecisions decisions_from_labels(const nd::Matrix<double>& labels);

}  // namespace sagerl::bench
