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

#include "sagerl/nd/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace sagerl::nd {

void AdamConfig::validate() const {
  if (!(learning_rate > 0)) throw std::invalid_argument("adam: learning_rate must be positive");
  if (!(beta1 >= 0 && beta1 < 1)) throw std::invalid_argument("adam: beta1 must be in [0, 1)");
  if (!(beta2 >= 0 && beta2 < 1)) throw std::invalid_argument("adam: beta2 must be in [0, 1)");
  if (!(epsilon > 0)) throw std::invalid_argument("adam: epsilon must be positive");
}

template <typename T>
void adam_step(Param<T>& param, const AdamConfig& cfg) {
  require_same_shape("adam_step", param.value, param.grad);
  ++param.step_count;
  const double t = static_cast<double>(param.step_count);
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);
  const T b1 = static_cast<T>(cfg.beta1);
  const T b2 = static_cast<T>(cfg.beta2);
  const T step = static_cast<T>(cfg.learning_rate / bc1);
  const T inv_bc2 = static_cast<T>(1.0 / bc2);
  const T eps = static_cast<T>(cfg.epsilon);

  T* w = param.value.data();
  const T* g = param.grad.data();
  T* m = param.adam_m.data();
  T* v = param.adam_v.data();
  for (std::size_t i = 0; i < param.value.size(); ++i) {
    m[i] = b1 * m[i] + (T(1) - b1) * g[i];
    v[i] = b2 * v[i] + (T(1) - b2) * g[i] * g[i];
    w[i] -= step * m[i] / (std::sqrt(v[i] * inv_bc2) + eps);
  }
}

template <typename T>
void sgd_step(Param<T>& param, double learning_rate) {
  const T lr = static_cast<T>(learning_rate);
  for (std::size_t i = 0; i < param.value.size(); ++i) {
    param.value.data()[i] -= lr * param.grad.data()[i];
  }
  ++param.step_count;
}

template void adam_step(Param<float>&, const AdamConfig&);
template void adam_step(Param<double>&, const AdamConfig&);
template void sgd_step(Param<float>&, double);
template void sgd_step(Param<double>&, double);

}  // namespace sagerl::nd
