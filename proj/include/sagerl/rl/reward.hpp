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

#include <span>

#include "sagerl/nd/loss.hpp"

namespace sagerl::rl {

/// Probability floor/ceiling applied before taking logs.
inline constexpr double kProbabilityClamp = 1e-12;

/// Per-step reward of one root: the negative cross-entropy of its predicted
/// distribution. Single-label: Σ_i y_i log ŷ_i. Multi-label (ŷ elementwise
/// sigmoid): Σ_i y_i log ŷ_i + (1 − y_i) log(1 − ŷ_i). Always ≤ 0.
double per_step_reward(std::span<const double> label_row, std::span<const double> predicted,
                       nd::LabelMode mode);

}  // namespace sagerl::rl
