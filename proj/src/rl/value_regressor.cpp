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

#include "sagerl/rl/value_regressor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sagerl/sampling/rng.hpp"

namespace sagerl::rl {

ValueRegressor::ValueRegressor(std::size_t feature_dim)
    : feature_dim_(feature_dim),
      weight_(nd::Matrix<double>(1, 2 * feature_dim)),
      bias_(nd::Matrix<double>(1, 1)) {}

ValueRegressor ValueRegressor::initialized(std::size_t feature_dim, std::uint64_t seed) {
  ValueRegressor reg(feature_dim);
  sampling::SplitMix64 rng(seed);
  const double limit = 1.0 / std::sqrt(static_cast<double>(2 * feature_dim));
  for (auto& w : reg.weight_.value.flat()) w = limit * (2.0 * sampling::uniform_unit(rng) - 1.0);
  reg.bias_.value(0, 0) = 0.1;
  return reg;
}

void ValueRegressor::check_dims(std::span<const double> x_v, std::span<const double> x_u) const {
  if (x_v.size() != feature_dim_ || x_u.size() != feature_dim_) {
    throw std::invalid_argument("value regressor: expected features of dimension " +
                                std::to_string(feature_dim_) + ", got " +
                                std::to_string(x_v.size()) + " and " + std::to_string(x_u.size()));
  }
}

double ValueRegressor::root_term(std::span<const double> x_v) const {
  const double* w = weight_.value.data();
  double acc = bias_.value(0, 0);
  for (std::size_t j = 0; j < feature_dim_; ++j) acc += w[j] * x_v[j];
  return acc;
}

double ValueRegressor::neighbor_term(std::span<const double> x_u) const {
  const double* w = weight_.value.data() + feature_dim_;
  double acc = 0;
  for (std::size_t j = 0; j < feature_dim_; ++j) acc += w[j] * x_u[j];
  return acc;
}

double ValueRegressor::preactivation(std::span<const double> x_v,
                                     std::span<const double> x_u) const {
  check_dims(x_v, x_u);
  return root_term(x_v) + neighbor_term(x_u);
}

double ValueRegressor::from_preactivation(double z) { return -std::exp(std::max(z, 0.0)); }

double ValueRegressor::predict(std::span<const double> x_v, std::span<const double> x_u) const {
  return from_preactivation(preactivation(x_v, x_u));
}

}  // namespace sagerl::rl
