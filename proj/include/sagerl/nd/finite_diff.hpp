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

#include <functional>
#include <span>
#include <vector>

namespace sagerl::nd {

using ScalarFunction = std::function<double(std::span<const double>)>;

/// Central differences (f(x + h·e_i) − f(x − h·e_i)) / 2h for each coordinate.
std::vector<double> finite_diff_grad(const ScalarFunction& f, std::span<const double> x,
                                     double h = 1e-5);

/// max_i |a_i − b_i| / max(max_i |a_i|, max_i |b_i|, floor). Used to compare
/// analytic and numeric gradients.
double max_relative_error(std::span<const double> a, std::span<const double> b,
                          double floor = 1e-8);

}  // namespace sagerl::nd
