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

#include "sagerl/nd/loss.hpp"

#include <algorithm>
#include <cmath>

#include "sagerl/nd/ops.hpp"

namespace sagerl::nd {

template <typename T>
LossGrad<T> softmax_xent(const Matrix<T>& logits, const Matrix<T>& onehot) {
  require_same_shape("softmax_xent", logits, onehot);
  LossGrad<T> out{T(0), Matrix<T>(logits.rows(), logits.cols())};
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    auto z = logits.row(r);
    auto y = onehot.row(r);
    auto g = out.grad.row(r);
    const T mx = *std::max_element(z.begin(), z.end());
    T sum = 0;
    for (T v : z) sum += std::exp(v - mx);
    const T lse = mx + std::log(sum);
    T ysum = 0;
    for (std::size_t c = 0; c < z.size(); ++c) {
      out.loss -= y[c] * (z[c] - lse);
      ysum += y[c];
    }
    for (std::size_t c = 0; c < z.size(); ++c) g[c] = std::exp(z[c] - lse) * ysum - y[c];
  }
  return out;
}

template <typename T>
LossGrad<T> sigmoid_xent(const Matrix<T>& logits, const Matrix<T>& multihot) {
  require_same_shape("sigmoid_xent", logits, multihot);
  LossGrad<T> out{T(0), sigmoid(logits)};
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const T z = logits.data()[i];
    const T y = multihot.data()[i];
    out.loss += std::max(z, T(0)) - z * y + std::log1p(std::exp(-std::abs(z)));
    out.grad.data()[i] -= y;
  }
  return out;
}

template LossGrad<float> softmax_xent(const Matrix<float>&, const Matrix<float>&);
template LossGrad<double> softmax_xent(const Matrix<double>&, const Matrix<double>&);
template LossGrad<float> sigmoid_xent(const Matrix<float>&, const Matrix<float>&);
template LossGrad<double> sigmoid_xent(const Matrix<double>&, const Matrix<double>&);

}  // namespace sagerl::nd
