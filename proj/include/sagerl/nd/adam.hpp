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

#include "sagerl/nd/matrix.hpp"

namespace sagerl::nd {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

/// A trainable matrix with its gradient and Adam moments, all one shape.
template <typename T>
struct Param {
  Matrix<T> value;
  Matrix<T> grad;
  Matrix<T> adam_m;
  Matrix<T> adam_v;
  std::uint64_t step_count = 0;

  Param() = default;
  explicit Param(Matrix<T> init)
      : value(std::move(init)),
        grad(value.rows(), value.cols()),
        adam_m(value.rows(), value.cols()),
        adam_v(value.rows(), value.cols()) {}

  std::size_t rows() const { return value.rows(); }
  std::size_t cols() const { return value.cols(); }
  std::size_t size() const { return value.size(); }
  void zero_grad() { grad.set_zero(); }
};

/// One bias-corrected Adam update. Leaves grad untouched.
template <typename T>
void adam_step(Param<T>& param, const AdamConfig& cfg);

/// Plain gradient descent, value -= lr·grad.
template <typename T>
void sgd_step(Param<T>& param, double learning_rate);

}  // namespace sagerl::nd
