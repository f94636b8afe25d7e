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

#include "sagerl/nd/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace sagerl::nd {

template <typename T>
Matrix<T>::Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("Matrix: " + std::to_string(data_.size()) + " values cannot fill " +
                     std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

template <typename T>
void Matrix<T>::fill(T value) {
  std::fill(data_.begin(), data_.end(), value);
}

template <typename T>
bool Matrix<T>::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](T x) { return std::isfinite(x); });
}

template <typename T>
std::string Matrix<T>::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

template <typename T>
void throw_shape_error(const char* op, const Matrix<T>& a, const Matrix<T>& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + a.shape_string() + " and " +
                   b.shape_string());
}

template class Matrix<float>;
template class Matrix<double>;
template void throw_shape_error(const char*, const Matrix<float>&, const Matrix<float>&);
template void throw_shape_error(const char*, const Matrix<double>&, const Matrix<double>&);

}  // namespace sagerl::nd
