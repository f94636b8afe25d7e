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

#include "sagerl/nd/ops.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

namespace sagerl::nd {
namespace {

template <typename T>
using RowMajor = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename T>
Eigen::Map<const RowMajor<T>> view(const Matrix<T>& m) {
  return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

template <typename T>
Eigen::Map<RowMajor<T>> view(Matrix<T>& m) {
  return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

}  // namespace

template <typename T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw_shape_error("matmul", a, b);
  Matrix<T> out(a.rows(), b.cols());
  if (a.cols() == 0) return out;
  view(out).noalias() = view(a) * view(b);
  return out;
}

template <typename T>
Matrix<T> matmul_nt(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw_shape_error("matmul_nt", a, b);
  Matrix<T> out(a.rows(), b.rows());
  if (a.cols() == 0) return out;
  view(out).noalias() = view(a) * view(b).transpose();
  return out;
}

template <typename T>
Matrix<T> matmul_tn(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw_shape_error("matmul_tn", a, b);
  Matrix<T> out(a.cols(), b.cols());
  if (a.rows() == 0) return out;
  view(out).noalias() = view(a).transpose() * view(b);
  return out;
}

template <typename T>
void matmul_tn_accumulate(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& out) {
  if (a.rows() != b.rows()) throw_shape_error("matmul_tn_accumulate", a, b);
  if (out.rows() != a.cols() || out.cols() != b.cols()) {
    throw ShapeError("matmul_tn_accumulate: output " + out.shape_string() + " does not match " +
                     a.shape_string() + "ᵀ·" + b.shape_string());
  }
  if (a.rows() == 0) return;
  view(out).noalias() += view(a).transpose() * view(b);
}

template <typename T>
Matrix<T> relu(const Matrix<T>& x) {
  Matrix<T> out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) out.data()[i] = std::max(x.data()[i], T(0));
  return out;
}

template <typename T>
Matrix<T> relu_backward(const Matrix<T>& x, const Matrix<T>& upstream) {
  require_same_shape("relu_backward", x, upstream);
  Matrix<T> out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.data()[i] = x.data()[i] > T(0) ? upstream.data()[i] : T(0);
  }
  return out;
}

template <typename T>
Matrix<T> concat_cols(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw_shape_error("concat_cols", a, b);
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row(r);
    std::copy_n(a.row(r).begin(), a.cols(), dst.begin());
    std::copy_n(b.row(r).begin(), b.cols(), dst.begin() + a.cols());
  }
  return out;
}

template <typename T>
Matrix<T> slice_cols(const Matrix<T>& x, std::size_t begin, std::size_t count) {
  if (begin + count > x.cols()) {
    throw ShapeError("slice_cols: columns [" + std::to_string(begin) + ", " +
                     std::to_string(begin + count) + ") out of range for " + x.shape_string());
  }
  Matrix<T> out(x.rows(), count);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::copy_n(x.row(r).begin() + begin, count, out.row(r).begin());
  }
  return out;
}

template <typename T>
Matrix<T> add(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out = a;
  add_inplace(out, b);
  return out;
}

template <typename T>
void add_inplace(Matrix<T>& acc, const Matrix<T>& x) {
  require_same_shape("add", acc, x);
  for (std::size_t i = 0; i < acc.size(); ++i) acc.data()[i] += x.data()[i];
}

GroupMap GroupMap::contiguous(std::size_t num_groups, std::size_t block) {
  GroupMap g;
  g.num_groups = num_groups;
  g.group_of_row.resize(num_groups * block);
  for (std::size_t i = 0; i < g.group_of_row.size(); ++i) g.group_of_row[i] = i / block;
  return g;
}

std::vector<std::size_t> GroupMap::counts() const {
  std::vector<std::size_t> c(num_groups, 0);
  for (auto grp : group_of_row) {
    if (grp >= num_groups) throw ShapeError("GroupMap: group id out of range");
    ++c[grp];
  }
  return c;
}

template <typename T>
Matrix<T> row_mean(const Matrix<T>& x, const GroupMap& groups) {
  if (groups.group_of_row.size() != x.rows()) {
    throw ShapeError("row_mean: group map covers " + std::to_string(groups.group_of_row.size()) +
                     " rows but input is " + x.shape_string());
  }
  const auto counts = groups.counts();
  Matrix<T> out(groups.num_groups, x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto dst = out.row(groups.group_of_row[r]);
    auto src = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) dst[c] += src[c];
  }
  for (std::size_t g = 0; g < groups.num_groups; ++g) {
    if (counts[g] == 0) continue;
    const T inv = T(1) / static_cast<T>(counts[g]);
    for (auto& v : out.row(g)) v *= inv;
  }
  return out;
}

template <typename T>
Matrix<T> row_mean_backward(const Matrix<T>& upstream, const GroupMap& groups) {
  if (upstream.rows() != groups.num_groups) {
    throw ShapeError("row_mean_backward: upstream " + upstream.shape_string() + " for " +
                     std::to_string(groups.num_groups) + " groups");
  }
  const auto counts = groups.counts();
  Matrix<T> out(groups.group_of_row.size(), upstream.cols());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    const auto g = groups.group_of_row[r];
    const T inv = T(1) / static_cast<T>(counts[g]);
    auto src = upstream.row(g);
    auto dst = out.row(r);
    for (std::size_t c = 0; c < out.cols(); ++c) dst[c] = src[c] * inv;
  }
  return out;
}

template <typename T>
Matrix<T> l2_normalize_rows(const Matrix<T>& x) {
  Matrix<T> out = x;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = out.row(r);
    T sq = 0;
    for (T v : row) sq += v * v;
    if (sq == T(0)) continue;
    const T inv = T(1) / std::sqrt(sq);
    for (auto& v : row) v *= inv;
  }
  return out;
}

template <typename T>
Matrix<T> l2_normalize_rows_backward(const Matrix<T>& x, const Matrix<T>& y,
                                     const Matrix<T>& upstream) {
  require_same_shape("l2_normalize_rows_backward", x, upstream);
  require_same_shape("l2_normalize_rows_backward", y, upstream);
  Matrix<T> out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto xr = x.row(r);
    auto yr = y.row(r);
    auto gr = upstream.row(r);
    auto dst = out.row(r);
    T sq = 0;
    for (T v : xr) sq += v * v;
    if (sq == T(0)) {
      std::copy(gr.begin(), gr.end(), dst.begin());
      continue;
    }
    const T inv_norm = T(1) / std::sqrt(sq);
    T dot = 0;
    for (std::size_t c = 0; c < x.cols(); ++c) dot += yr[c] * gr[c];
    for (std::size_t c = 0; c < x.cols(); ++c) dst[c] = (gr[c] - yr[c] * dot) * inv_norm;
  }
  return out;
}

template <typename T>
Matrix<T> softmax_rows(const Matrix<T>& logits) {
  Matrix<T> out(logits.rows(), logits.cols());
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    auto in = logits.row(r);
    auto dst = out.row(r);
    const T mx = *std::max_element(in.begin(), in.end());
    T sum = 0;
    for (std::size_t c = 0; c < in.size(); ++c) {
      dst[c] = std::exp(in[c] - mx);
      sum += dst[c];
    }
    for (auto& v : dst) v /= sum;
  }
  return out;
}

template <typename T>
Matrix<T> sigmoid(const Matrix<T>& logits) {
  Matrix<T> out(logits.rows(), logits.cols());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const T z = logits.data()[i];
    // Split by sign so exp never overflows.
    out.data()[i] = z >= 0 ? T(1) / (T(1) + std::exp(-z)) : std::exp(z) / (T(1) + std::exp(z));
  }
  return out;
}

#define SAGERL_INSTANTIATE_OPS(T)                                                              \
  template Matrix<T> matmul(const Matrix<T>&, const Matrix<T>&);                               \
  template Matrix<T> matmul_nt(const Matrix<T>&, const Matrix<T>&);                            \
  template Matrix<T> matmul_tn(const Matrix<T>&, const Matrix<T>&);                            \
  template void matmul_tn_accumulate(const Matrix<T>&, const Matrix<T>&, Matrix<T>&);          \
  template Matrix<T> relu(const Matrix<T>&);                                                   \
  template Matrix<T> relu_backward(const Matrix<T>&, const Matrix<T>&);                        \
  template Matrix<T> concat_cols(const Matrix<T>&, const Matrix<T>&);                          \
  template Matrix<T> slice_cols(const Matrix<T>&, std::size_t, std::size_t);                   \
  template Matrix<T> add(const Matrix<T>&, const Matrix<T>&);                                  \
  template void add_inplace(Matrix<T>&, const Matrix<T>&);                                     \
  template Matrix<T> row_mean(const Matrix<T>&, const GroupMap&);                              \
  template Matrix<T> row_mean_backward(const Matrix<T>&, const GroupMap&);                     \
  template Matrix<T> l2_normalize_rows(const Matrix<T>&);                                      \
  template Matrix<T> l2_normalize_rows_backward(const Matrix<T>&, const Matrix<T>&,            \
                                                const Matrix<T>&);                             \
  template Matrix<T> softmax_rows(const Matrix<T>&);                                           \
  template Matrix<T> sigmoid(const Matrix<T>&);

SAGERL_INSTANTIATE_OPS(float)
SAGERL_INSTANTIATE_OPS(double)

}  // namespace sagerl::nd
