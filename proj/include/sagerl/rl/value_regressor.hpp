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
#include <span>
#include <stdexcept>

#include "sagerl/nd/adam.hpp"

namespace sagerl::rl {

/// Single-layer value approximator
///
///   Ĝ(v, u) = −exp(ReLU(W·(x_v ‖ x_u) + b)),
///
/// with W of shape 1×2M. Output is always ≤ −1.
class ValueRegressor {
 public:
  ValueRegressor() = default;
  /// Zero weights, unfitted.
  explicit ValueRegressor(std::size_t feature_dim);

  /// Small uniform weights and a positive bias so every unit starts on the
  /// active side of the ReLU.
  static ValueRegressor initialized(std::size_t feature_dim, std::uint64_t seed);

  std::size_t feature_dim() const { return feature_dim_; }
  bool fitted() const { return fitted_; }
  void set_fitted(bool fitted = true) { fitted_ = fitted; }

  double preactivation(std::span<const double> x_v, std::span<const double> x_u) const;
  double predict(std::span<const double> x_v, std::span<const double> x_u) const;

  /// W·(x_v ‖ 0) + b, shared by every neighbor of v.
  double root_term(std::span<const double> x_v) const;
  /// W·(0 ‖ x_u).
  double neighbor_term(std::span<const double> x_u) const;
  static double from_preactivation(double z);

  nd::Param<double>& weight() { return weight_; }
  const nd::Param<double>& weight() const { return weight_; }
  nd::Param<double>& bias() { return bias_; }
  const nd::Param<double>& bias() const { return bias_; }

 private:
  void check_dims(std::span<const double> x_v, std::span<const double> x_u) const;

  std::size_t feature_dim_ = 0;
  nd::Param<double> weight_;  // 1 × 2M
  nd::Param<double> bias_;    // 1 × 1
  bool fitted_ = false;
};

}  // namespace sagerl::rl
