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

#include "sagerl/nd/matrix.hpp"

namespace sagerl::nd {

template <typename T>
struct LossGrad {
  T loss = 0;          // summed over rows
  Matrix<T> grad;      // d loss / d logits
};

/// Softmax cross-entropy, −Σ_rows Σ_i y_i log softmax(z)_i, evaluated through
/// log-sum-exp.
template <typename T>
LossGrad<T> softmax_xent(const Matrix<T>& logits, const Matrix<T>& onehot);

/// Elementwise sigmoid cross-entropy for multi-hot targets:
/// −Σ [y log σ(z) + (1−y) log(1−σ(z))], in the overflow-free form
/// max(z,0) − z·y + log(1 + e^{−|z|}).
template <typename T>
LossGrad<T> sigmoid_xent(const Matrix<T>& logits, const Matrix<T>& multihot);

enum class LabelMode { kSingle, kMulti };

template <typename T>
LossGrad<T> classification_loss(LabelMode mode, const Matrix<T>& logits, const Matrix<T>& targets) {
  return mode == LabelMode::kSingle ? softmax_xent(logits, targets) : sigmoid_xent(logits, targets);
}

}  // namespace sagerl::nd
