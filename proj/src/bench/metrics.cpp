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

#include "sagerl/bench/metrics.hpp"

#include <iostream>
#include <stdexcept>
#include <string>

namespace sagerl::bench {

ConfusionCounts pooled_counts(const LabelDecisions& predicted, const LabelDecisions& truth) {
  if (predicted.rows != truth.rows || predicted.cols != truth.cols) {
    throw std::invalid_argument("micro_f1: predictions are " + std::to_string(predicted.rows) +
                                "x" + std::to_string(predicted.cols) + " but labels are " +
                                std::to_string(truth.rows) + "x" + std::to_string(truth.cols));
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted.data.size(); ++i) {
    const bool p = predicted.data[i] != 0;
    const bool t = truth.data[i] != 0;
    c.tp += p && t;
    c.fp += p && !t;
    c.fn += !p && t;
  }
  return c;
}

double micro_f1(const LabelDecisions& predicted, const LabelDecisions& truth, nd::LabelMode) {
  // One-hot decisions pool the same way as multi-hot ones, so the mode
  // changes nothing here.
  const auto c = pooled_counts(predicted, truth);
  const double denom = 2.0 * static_cast<double>(c.tp) + static_cast<double>(c.fp + c.fn);
  if (denom == 0) {
    std::cerr << "warning: micro_f1 has no positive decisions or labels; returning 0\n";
    return 0.0;
  }
  return 2.0 * static_cast<double>(c.tp) / denom;
}

LabelDecisions decisions_from_labels(const nd::Matrix<double>& labels) {
  LabelDecisions d(labels.rows(), labels.cols());
  for (std::size_t i = 0; i < labels.size(); ++i) d.data[i] = labels.data()[i] != 0.0;
  return d;
}

}  // namespace sagerl::bench
