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

#include "sagerl/rl/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sagerl::rl {

double per_step_reward(std::span<const double> label_row, std::span<const double> predicted,
                       nd::LabelMode mode) {
  if (label_row.size() != predicted.size()) {
    throw std::invalid_argument("per_step_reward: label and prediction lengths differ");
  }
  const auto clamp = [](double p) {
    return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
  };
  double r = 0;
  for (std::size_t i = 0; i < label_row.size(); ++i) {
    const double p = clamp(predicted[i]);
    const double y = label_row[i];
    r += y * std::log(p);
    if (mode == nd::LabelMode::kMulti) r += (1.0 - y) * std::log(1.0 - p);
  }
  return std::min(r, 0.0);
}

}  // namespace sagerl::rl
