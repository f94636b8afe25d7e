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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "sagerl/nd/adam.hpp"
#include "sagerl/nd/finite_diff.hpp"
#include "sagerl/nd/loss.hpp"
#include "sagerl/nd/matrix.hpp"
#include "sagerl/nd/ops.hpp"
#include "sagerl/sampling/rng.hpp"

namespace {

using sagerl::nd::Matrix;
namespace nd = sagerl::nd;
using sagerl::sampling::SplitMix64;

Matrix<double> random_matrix(std::size_t r, std::size_t c, SplitMix64& rng, double scale = 1.0) {
  Matrix<double> m(r, c);
  for (auto& v : m.flat()) v = scale * sagerl::sampling::standard_normal(rng);
  return m;
}

Matrix<double> naive_matmul(const Matrix<double>& a, const Matrix<double>& b) {
  Matrix<double> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

Matrix<double> transpose(const Matrix<double>& a) {
  Matrix<double> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

void expect_near(const Matrix<double>& a, const Matrix<double>& b, double tol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.data()[i], b.data()[i], tol) << i;
}

/// Loss L = Σ w ⊙ f(x) reduces a matrix function to a scalar for FD checks.
template <typename Fn>
std::vector<double> numeric_vjp(Fn fn, const Matrix<double>& x, const Matrix<double>& w) {
  const auto f = [&](std::span<const double> v) {
    Matrix<double> xx(x.rows(), x.cols(), std::vector<double>(v.begin(), v.end()));
    const auto y = fn(xx);
    double acc = 0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += w.data()[i] * y.data()[i];
    return acc;
  };
  return nd::finite_diff_grad(f, x.flat());
}

TEST(Matmul, MatchesNaiveTripleLoop) {
  SplitMix64 rng(1);
  const auto a = random_matrix(7, 5, rng);
  const auto b = random_matrix(5, 9, rng);
  expect_near(nd::matmul(a, b), naive_matmul(a, b), 1e-12);
  const auto bt = transpose(b);
  expect_near(nd::matmul_nt(a, bt), naive_matmul(a, b), 1e-12);
  const auto at = transpose(a);
  expect_near(nd::matmul_tn(at, b), naive_matmul(a, b), 1e-12);
}

TEST(Matmul, AccumulateAddsToExisting) {
  SplitMix64 rng(2);
  const auto a = random_matrix(6, 3, rng);
  const auto b = random_matrix(6, 4, rng);
  Matrix<double> out(3, 4, 1.5);
  nd::matmul_tn_accumulate(a, b, out);
  auto ref = naive_matmul(transpose(a), b);
  for (auto& v : ref.flat()) v += 1.5;
  expect_near(out, ref, 1e-12);
}

TEST(Matmul, ShapeMismatchThrows) {
  Matrix<double> a(2, 3), b(2, 3);
  EXPECT_THROW(nd::matmul(a, b), nd::ShapeError);
  EXPECT_THROW(nd::add(a, Matrix<double>(3, 2)), nd::ShapeError);
  EXPECT_THROW(nd::concat_cols(a, Matrix<double>(3, 1)), nd::ShapeError);
}

TEST(Matmul, FloatAgreesWithDouble) {
  SplitMix64 rng(3);
  const auto a = random_matrix(8, 8, rng);
  const auto b = random_matrix(8, 8, rng);
  const auto f = nd::matmul(nd::cast<float>(a), nd::cast<float>(b));
  expect_near(nd::cast<double>(f), nd::matmul(a, b), 1e-4);
}

TEST(Relu, BackwardIsZeroAtTie) {
  Matrix<double> x(1, 3, std::vector<double>{-1, 0, 2});
  Matrix<double> up(1, 3, 1.0);
  const auto g = nd::relu_backward(x, up);
  EXPECT_EQ(g(0, 0), 0);
  EXPECT_EQ(g(0, 1), 0);
  EXPECT_EQ(g(0, 2), 1);
  EXPECT_EQ(nd::relu(x)(0, 0), 0);
}

TEST(ConcatSlice, RoundTrip) {
  SplitMix64 rng(4);
  const auto a = random_matrix(3, 2, rng);
  const auto b = random_matrix(3, 4, rng);
  const auto c = nd::concat_cols(a, b);
  EXPECT_EQ(c.cols(), 6u);
  EXPECT_EQ(nd::slice_cols(c, 0, 2), a);
  EXPECT_EQ(nd::slice_cols(c, 2, 4), b);
}

TEST(RowMean, GroupsAndGradient) {
  SplitMix64 rng(5);
  const auto x = random_matrix(6, 3, rng);
  const auto groups = nd::GroupMap::contiguous(2, 3);
  const auto m = nd::row_mean(x, groups);
  EXPECT_NEAR(m(1, 2), (x(3, 2) + x(4, 2) + x(5, 2)) / 3, 1e-15);
  const auto w = random_matrix(2, 3, rng);
  const auto analytic = nd::row_mean_backward(w, groups);
  const auto numeric = numeric_vjp([&](const Matrix<double>& xx) { return nd::row_mean(xx, groups); }, x, w);
  EXPECT_LT(nd::max_relative_error(analytic.flat(), numeric), 1e-8);
}

TEST(L2Normalize, UnitRowsAndZeroRowsUnchanged) {
  Matrix<double> x(3, 2, std::vector<double>{3, 4, 0, 0, -1e-3, 0});
  const auto y = nd::l2_normalize_rows(x);
  EXPECT_NEAR(y(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(y(0, 1), 0.8, 1e-15);
  EXPECT_EQ(y(1, 0), 0);
  EXPECT_EQ(y(1, 1), 0);
  EXPECT_NEAR(y(2, 0), -1, 1e-15);
}

TEST(L2Normalize, GradientMatchesFiniteDifferences) {
  SplitMix64 rng(6);
  const auto x = random_matrix(4, 5, rng);
  const auto w = random_matrix(4, 5, rng);
  const auto y = nd::l2_normalize_rows(x);
  const auto analytic = nd::l2_normalize_rows_backward(x, y, w);
  const auto numeric = numeric_vjp([](const Matrix<double>& xx) { return nd::l2_normalize_rows(xx); }, x, w);
  EXPECT_LT(nd::max_relative_error(analytic.flat(), numeric), 1e-7);
}

TEST(SoftmaxXent, GradientAndValue) {
  SplitMix64 rng(7);
  const auto z = random_matrix(4, 3, rng);
  Matrix<double> y(4, 3);
  for (std::size_t i = 0; i < 4; ++i) y(i, i % 3) = 1;
  const auto lg = nd::softmax_xent(z, y);
  const auto p = nd::softmax_rows(z);
  double ref = 0;
  for (std::size_t i = 0; i < 4; ++i) ref -= std::log(p(i, i % 3));
  EXPECT_NEAR(lg.loss, ref, 1e-12);
  const auto f = [&](std::span<const double> v) {
    return nd::softmax_xent(Matrix<double>(4, 3, std::vector<double>(v.begin(), v.end())), y).loss;
  };
  EXPECT_LT(nd::max_relative_error(lg.grad.flat(), nd::finite_diff_grad(f, z.flat())), 1e-7);
}

TEST(SoftmaxXent, LargeLogitsStayFinite) {
  Matrix<double> z(1, 3, std::vector<double>{1000, -1000, 0});
  Matrix<double> y(1, 3, std::vector<double>{0, 1, 0});
  const auto lg = nd::softmax_xent(z, y);
  EXPECT_TRUE(std::isfinite(lg.loss));
  EXPECT_NEAR(lg.loss, 2000, 1e-9);
  EXPECT_TRUE(lg.grad.all_finite());
}

TEST(SigmoidXent, GradientAndValue) {
  SplitMix64 rng(8);
  const auto z = random_matrix(3, 4, rng, 3.0);
  Matrix<double> y(3, 4);
  for (std::size_t i = 0; i < y.size(); ++i) y.data()[i] = (i * 7) % 3 == 0;
  const auto lg = nd::sigmoid_xent(z, y);
  double ref = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double s = 1 / (1 + std::exp(-z.data()[i]));
    ref -= y.data()[i] * std::log(s) + (1 - y.data()[i]) * std::log(1 - s);
  }
  EXPECT_NEAR(lg.loss, ref, 1e-10);
  const auto f = [&](std::span<const double> v) {
    return nd::sigmoid_xent(Matrix<double>(3, 4, std::vector<double>(v.begin(), v.end())), y).loss;
  };
  EXPECT_LT(nd::max_relative_error(lg.grad.flat(), nd::finite_diff_grad(f, z.flat())), 1e-7);
}

TEST(SigmoidXent, LargeLogitsStayFinite) {
  Matrix<double> z(1, 2, std::vector<double>{800, -800});
  Matrix<double> y(1, 2, std::vector<double>{0, 1});
  const auto lg = nd::sigmoid_xent(z, y);
  EXPECT_NEAR(lg.loss, 1600, 1e-9);
  EXPECT_TRUE(lg.grad.all_finite());
}

TEST(Adam, FirstStepHasLearningRateMagnitude) {
  nd::Param<double> p(Matrix<double>(1, 3, std::vector<double>{1, 2, 3}));
  p.grad = Matrix<double>(1, 3, std::vector<double>{0.5, -20, 1e-3});
  nd::adam_step(p, nd::AdamConfig{0.01});
  EXPECT_NEAR(p.value(0, 0), 1 - 0.01, 1e-9);
  EXPECT_NEAR(p.value(0, 1), 2 + 0.01, 1e-9);
  EXPECT_NEAR(p.value(0, 2), 3 - 0.01, 1e-6);
  EXPECT_EQ(p.step_count, 1u);
}

TEST(Adam, MinimizesQuadratic) {
  nd::Param<double> p(Matrix<double>(1, 2, std::vector<double>{5, -3}));
  for (int i = 0; i < 5000; ++i) {
    p.grad(0, 0) = 2 * (p.value(0, 0) - 1);
    p.grad(0, 1) = 2 * (p.value(0, 1) + 2);
    nd::adam_step(p, nd::AdamConfig{0.01});
  }
  EXPECT_NEAR(p.value(0, 0), 1, 1e-3);
  EXPECT_NEAR(p.value(0, 1), -2, 1e-3);
}

TEST(Adam, RejectsBadConfig) {
  EXPECT_THROW((nd::AdamConfig{-1}.validate()), std::invalid_argument);
  EXPECT_THROW((nd::AdamConfig{0.1, 1.0}.validate()), std::invalid_argument);
}

TEST(Sgd, SubtractsScaledGradient) {
  nd::Param<double> p(Matrix<double>(1, 1, 2.0));
  p.grad(0, 0) = 4;
  nd::sgd_step(p, 0.25);
  EXPECT_EQ(p.value(0, 0), 1.0);
}

TEST(FiniteDiff, ExactOnQuadratic) {
  const auto f = [](std::span<const double> x) { return x[0] * x[0] + 3 * x[0] * x[1]; };
  const std::vector<double> x{1.5, -2};
  const auto g = nd::finite_diff_grad(f, x);
  EXPECT_NEAR(g[0], 2 * 1.5 + 3 * -2, 1e-8);
  EXPECT_NEAR(g[1], 3 * 1.5, 1e-8);
}

TEST(FiniteDiff, RelativeErrorUsesFloor) {
  const std::vector<double> a{0, 0}, b{1e-12, 0};
  EXPECT_NEAR(nd::max_relative_error(a, b), 1e-4, 1e-12);
  const std::vector<double> c{2, 1}, d{2, 1.2};
  EXPECT_NEAR(nd::max_relative_error(c, d), 0.1, 1e-12);
}

}  // namespace
