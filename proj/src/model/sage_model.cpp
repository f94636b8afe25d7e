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

#include "sagerl/model/sage_model.hpp"

#include <cmath>
#include <stdexcept>

#include "sagerl/nd/ops.hpp"
#include "sagerl/sampling/rng.hpp"

namespace sagerl::model {

const char* to_string(Aggregator a) {
  return a == Aggregator::kMeanConcat ? "mean_concat" : "mean_add";
}

Aggregator aggregator_from_string(const std::string& s) {
  if (s == "mean_concat") return Aggregator::kMeanConcat;
  if (s == "mean_add") return Aggregator::kMeanAdd;
  throw std::invalid_argument("unknown aggregator \"" + s + "\" (mean_concat | mean_add)");
}

void SageConfig::validate() const {
  if (layers < 1) throw std::invalid_argument("sage config: layers must be >= 1");
  if (fanouts.size() != layers) {
    throw std::invalid_argument("sage config: " + std::to_string(fanouts.size()) +
                                " fanouts given for " + std::to_string(layers) + " layers");
  }
  for (auto n : fanouts) {
    if (n < 1) throw std::invalid_argument("sage config: fanouts must be >= 1");
  }
  if (hidden_dim < 1) throw std::invalid_argument("sage config: hidden_dim must be >= 1");
  if (!(learning_rate > 0)) throw std::invalid_argument("sage config: learning_rate must be > 0");
  if (batch_size < 1) throw std::invalid_argument("sage config: batch_size must be >= 1");
}

std::size_t sage_parameter_count(Aggregator agg, std::size_t input_dim, std::size_t hidden_dim,
                                 std::size_t num_labels, std::size_t layers) {
  const std::size_t width = agg == Aggregator::kMeanConcat ? 2 * hidden_dim : hidden_dim;
  std::size_t count = 0;
  for (std::size_t k = 1; k <= layers; ++k) {
    const std::size_t in = k == 1 ? input_dim : width;
    count += 2 * hidden_dim * in;
    count += width * num_labels + num_labels;
  }
  return count;
}

namespace {

template <typename T>
Matrix<T> glorot(std::size_t rows, std::size_t cols, sampling::SplitMix64& rng) {
  Matrix<T> m(rows, cols);
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  for (auto& w : m.flat()) w = static_cast<T>(limit * (2.0 * sampling::uniform_unit(rng) - 1.0));
  return m;
}

template <typename T>
Matrix<T> gather_rows(const Matrix<double>& src, std::span<const graph::NodeId> ids) {
  Matrix<T> out(ids.size(), src.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto s = src.row(ids[i]);
    auto d = out.row(i);
    for (std::size_t c = 0; c < s.size(); ++c) d[c] = static_cast<T>(s[c]);
  }
  return out;
}

template <typename T>
Matrix<T> column_sums(const Matrix<T>& m) {
  Matrix<T> out(1, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) out(0, c) += row[c];
  }
  return out;
}

template <typename T>
Matrix<T> apply_head(const ClassifierHead<T>& head, const Matrix<T>& h) {
  Matrix<T> logits = nd::matmul_nt(h, head.weight.value);
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    auto row = logits.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += head.bias.value(0, c);
  }
  return logits;
}

template <typename T>
void head_backward(ClassifierHead<T>& head, const Matrix<T>& h, const Matrix<T>& dlogits) {
  nd::matmul_tn_accumulate(dlogits, h, head.weight.grad);
  nd::add_inplace(head.bias.grad, column_sums(dlogits));
}

}  // namespace

template <typename T>
SageParams<T> SageParams<T>::init(const SageConfig& cfg, std::size_t input_dim,
                                  std::size_t num_labels, std::uint64_t seed) {
  cfg.validate();
  SageParams p;
  p.aggregator = cfg.aggregator;
  p.input_dim = input_dim;
  p.hidden_dim = cfg.hidden_dim;
  p.num_labels = num_labels;
  p.fanouts = cfg.fanouts;
  sampling::SplitMix64 rng(seed);
  for (std::size_t k = 1; k <= cfg.layers; ++k) {
    const std::size_t in = p.output_width(k - 1);
    p.layers.push_back({Param<T>(glorot<T>(cfg.hidden_dim, in, rng)),
                        Param<T>(glorot<T>(cfg.hidden_dim, in, rng))});
  }
  for (std::size_t d = 1; d <= cfg.layers; ++d) {
    p.heads.push_back({Param<T>(glorot<T>(num_labels, p.output_width(d), rng)),
                       Param<T>(Matrix<T>(1, num_labels))});
  }
  return p;
}

template <typename T>
std::size_t SageParams<T>::output_width(std::size_t k) const {
  if (k == 0) return input_dim;
  return aggregator == Aggregator::kMeanConcat ? 2 * hidden_dim : hidden_dim;
}

template <typename T>
std::size_t SageParams<T>::parameter_count() const {
  std::size_t n = 0;
  for_each_param([&n](const Param<T>& p) { n += p.size(); });
  return n;
}

template <typename T>
void SageParams<T>::for_each_param(const std::function<void(Param<T>&)>& fn) {
  for (auto& l : layers) {
    fn(l.w_neigh);
    fn(l.w_self);
  }
  for (auto& h : heads) {
    fn(h.weight);
    fn(h.bias);
  }
}

template <typename T>
void SageParams<T>::for_each_param(const std::function<void(const Param<T>&)>& fn) const {
  for (const auto& l : layers) {
    fn(l.w_neigh);
    fn(l.w_self);
  }
  for (const auto& h : heads) {
    fn(h.weight);
    fn(h.bias);
  }
}

template <typename T>
void SageParams<T>::zero_grad() {
  for_each_param([](Param<T>& p) { p.zero_grad(); });
}

template <typename T>
Matrix<T> gather_labels(const Graph& g, std::span<const graph::NodeId> nodes) {
  return gather_rows<T>(g.labels(), nodes);
}

template <typename T>
ForwardResult<T> forward(const Graph& g, const SampleTree& tree, const SageParams<T>& params,
                         std::size_t depth) {
  if (depth < 1 || depth > params.depth()) {
    throw std::invalid_argument("forward: depth " + std::to_string(depth) + " outside [1, " +
                                std::to_string(params.depth()) + "]");
  }
  if (tree.depth() < depth) {
    throw std::invalid_argument("forward: tree has " + std::to_string(tree.depth()) +
                                " hops, need " + std::to_string(depth));
  }
  for (std::size_t j = 0; j < depth; ++j) {
    if (tree.fanouts[j] != params.fanouts.at(j)) {
      throw std::invalid_argument("forward: tree fanout " + std::to_string(tree.fanouts[j]) +
                                  " at hop " + std::to_string(j + 1) + " but model expects " +
                                  std::to_string(params.fanouts[j]));
    }
    if (tree.hops[j + 1].size() != tree.hops[j].size() * tree.fanouts[j]) {
      throw std::invalid_argument("forward: malformed sample tree at hop " + std::to_string(j + 1));
    }
  }
  if (g.meta().feature_dim != params.input_dim) {
    throw std::invalid_argument("forward: graph features are " +
                                std::to_string(g.meta().feature_dim) + "-dimensional, model expects " +
                                std::to_string(params.input_dim));
  }

  ForwardResult<T> out;
  auto& c = out.cache;
  c.depth = depth;
  c.num_roots = tree.num_roots();
  c.fanouts.assign(tree.fanouts.begin(), tree.fanouts.begin() + static_cast<std::ptrdiff_t>(depth));
  c.embeddings.resize(depth + 1);
  c.neigh_mean.resize(depth);
  c.pre_act.resize(depth);
  c.post_relu.resize(depth);

  for (std::size_t j = 0; j <= depth; ++j) {
    c.embeddings[0].push_back(gather_rows<T>(g.features(), tree.hops[j]));
  }
  for (std::size_t k = 1; k <= depth; ++k) {
    const auto& layer = params.layers[k - 1];
    for (std::size_t j = 0; j + k <= depth; ++j) {
      const auto& self = c.embeddings[k - 1][j];
      const auto& kids = c.embeddings[k - 1][j + 1];
      auto mean = nd::row_mean(kids, nd::GroupMap::contiguous(self.rows(), tree.fanouts[j]));
      auto zn = nd::matmul_nt(mean, layer.w_neigh.value);
      auto zs = nd::matmul_nt(self, layer.w_self.value);
      Matrix<T> z = params.aggregator == Aggregator::kMeanConcat ? nd::concat_cols(zn, zs)
                                                                 : nd::add(zn, zs);
      auto a = nd::relu(z);
      c.embeddings[k].push_back(nd::l2_normalize_rows(a));
      c.neigh_mean[k - 1].push_back(std::move(mean));
      c.pre_act[k - 1].push_back(std::move(z));
      c.post_relu[k - 1].push_back(std::move(a));
    }
  }
  out.logits = head_logits(params, c, depth);
  return out;
}

template <typename T>
Matrix<T> head_logits(const SageParams<T>& params, const ForwardCache<T>& cache, std::size_t d) {
  if (d < 1 || d > cache.depth) throw std::invalid_argument("head_logits: depth out of range");
  return apply_head(params.heads[d - 1], cache.embeddings[d][0]);
}

template <typename T>
T loss_and_backward(const Matrix<T>& logits, const Matrix<T>& labels, nd::LabelMode mode,
                    SageParams<T>& params, const ForwardCache<T>& cache) {
  const std::size_t depth = cache.depth;
  if (depth == 0 || cache.embeddings.size() != depth + 1 || logits.rows() != cache.num_roots ||
      logits.cols() != params.num_labels || cache.embeddings[depth][0].cols() !=
                                                params.output_width(depth)) {
    throw nd::ShapeError("loss_and_backward: forward cache does not match logits " +
                         logits.shape_string());
  }
  auto lg = nd::classification_loss(mode, logits, labels);

  auto& head = params.heads[depth - 1];
  head_backward(head, cache.embeddings[depth][0], lg.grad);

  // grads[j] holds dL/dh^k for hop j at the current k.
  std::vector<Matrix<T>> grads;
  grads.push_back(nd::matmul(lg.grad, head.weight.value));
  const std::size_t hidden = params.hidden_dim;
  for (std::size_t k = depth; k >= 1; --k) {
    auto& layer = params.layers[k - 1];
    std::vector<Matrix<T>> below;
    if (k > 1) {
      for (std::size_t j = 0; j + k - 1 <= depth; ++j) {
        below.emplace_back(cache.embeddings[k - 1][j].rows(), cache.embeddings[k - 1][j].cols());
      }
    }
    for (std::size_t j = 0; j < grads.size(); ++j) {
      const auto& a = cache.post_relu[k - 1][j];
      auto da = nd::l2_normalize_rows_backward(a, cache.embeddings[k][j], grads[j]);
      auto dz = nd::relu_backward(cache.pre_act[k - 1][j], da);
      Matrix<T> dzn, dzs;
      if (params.aggregator == Aggregator::kMeanConcat) {
        dzn = nd::slice_cols(dz, 0, hidden);
        dzs = nd::slice_cols(dz, hidden, hidden);
      } else {
        dzn = dz;
        dzs = std::move(dz);
      }
      nd::matmul_tn_accumulate(dzn, cache.neigh_mean[k - 1][j], layer.w_neigh.grad);
      nd::matmul_tn_accumulate(dzs, cache.embeddings[k - 1][j], layer.w_self.grad);
      if (k > 1) {
        auto dmean = nd::matmul(dzn, layer.w_neigh.value);
        const auto groups = nd::GroupMap::contiguous(dmean.rows(), cache.fanouts[j]);
        nd::add_inplace(below[j + 1], nd::row_mean_backward(dmean, groups));
        nd::add_inplace(below[j], nd::matmul(dzs, layer.w_self.value));
      }
    }
    if (k == 1) break;
    grads = std::move(below);
  }
  return lg.loss;
}

template <typename T>
T aux_loss_and_backward(const Matrix<T>& labels, nd::LabelMode mode, SageParams<T>& params,
                        const ForwardCache<T>& cache, std::size_t d) {
  auto logits = head_logits(params, cache, d);
  auto lg = nd::classification_loss(mode, logits, labels);
  head_backward(params.heads[d - 1], cache.embeddings[d][0], lg.grad);
  return lg.loss;
}

#define SAGERL_INSTANTIATE_MODEL(T)                                                            \
  template struct SageParams<T>;                                                               \
  template ForwardResult<T> forward(const Graph&, const SampleTree&, const SageParams<T>&,     \
                                    std::size_t);                                              \
  template Matrix<T> head_logits(const SageParams<T>&, const ForwardCache<T>&, std::size_t);   \
  template Matrix<T> gather_labels(const Graph&, std::span<const graph::NodeId>);              \
  template T loss_and_backward(const Matrix<T>&, const Matrix<T>&, nd::LabelMode,              \
                               SageParams<T>&, const ForwardCache<T>&);                        \
  template T aux_loss_and_backward(const Matrix<T>&, nd::LabelMode, SageParams<T>&,            \
                                   const ForwardCache<T>&, std::size_t);

SAGERL_INSTANTIATE_MODEL(float)
SAGERL_INSTANTIATE_MODEL(double)

}  // namespace sagerl::model
