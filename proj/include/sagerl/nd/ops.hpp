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

#include <cstddef>
#include <vector>

#include "sagerl/nd/matrix.hpp"

namespace sagerl::nd {

// Products. A is m×k in every case; the suffix names which operand is
// used transposed.
template <typename T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b);  // A·B
template <typename T>
Matrix<T> matmul_nt(const Matrix<T>& a, const Matrix<T>& b);  // A·Bᵀ
template <typename T>
Matrix<T> matmul_tn(const Matrix<T>& a, const Matrix<T>& b);  // Aᵀ·B

/// out += Aᵀ·B, the weight-gradient accumulation shape.
template <typename T>
void matmul_tn_accumulate(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& out);

template <typename T>
Matrix<T> relu(const Matrix<T>& x);

/// Passes upstream where x > 0; zero elsewhere, including x == 0.
template <typename T>
Matrix<T> relu_backward(const Matrix<T>& x, const Matrix<T>& upstream);

template <typename T>
Matrix<T> concat_cols(const Matrix<T>& a, const Matrix<T>& b);

/// Columns [begin, begin + count) of x.
template <typename T>
Matrix<T> slice_cols(const Matrix<T>& x, std::size_t begin, std::size_t count);

template <typename T>
Matrix<T> add(const Matrix<T>& a, const Matrix<T>& b);

template <typename T>
void add_inplace(Matrix<T>& acc, const Matrix<T>& x);

/// Assignment of each input row to an output group.
struct GroupMap {
  std::vector<std::size_t> group_of_row;
  std::size_t num_groups = 0;

  /// Rows [i*block, (i+1)*block) form group i.
  static GroupMap contiguous(std::size_t num_groups, std::size_t block);
  std::vector<std::size_t> counts() const;
};

/// Mean of the rows of x in each group. Empty groups yield zero rows.
template <typename T>
Matrix<T> row_mean(const Matrix<T>& x, const GroupMap& groups);

template <typename T>
Matrix<T> row_mean_backward(const Matrix<T>& upstream, const GroupMap& groups);

/// Scales each nonzero row to unit Euclidean norm. Zero rows are returned
/// unchanged.
template <typename T>
Matrix<T> l2_normalize_rows(const Matrix<T>& x);

/// Gradient of l2_normalize_rows given its input x and output y. Zero rows
/// pass upstream through, matching the identity used in the forward pass.
template <typename T>
Matrix<T> l2_normalize_rows_backward(const Matrix<T>& x, const Matrix<T>& y,
                                     const Matrix<T>& upstream);

template <typename T>
Matrix<T> softmax_rows(const Matrix<T>& logits);

template <typename T>
Matrix<T> sigmoid(const Matrix<T>& logits);

}  // namespace sagerl::nd
