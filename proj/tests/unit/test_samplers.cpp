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

#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <memory>
#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "sagerl/rl/value_regressor.hpp"
#include "sagerl/sampling/rng.hpp"
#include "sagerl/sampling/samplers.hpp"

namespace {

namespace sampling = sagerl::sampling;
using sagerl::graph::Graph;
using sagerl::graph::NodeId;
using sagerl::nd::LabelMode;
using sagerl::rl::ValueRegressor;
using sampling::SplitMix64;

/// Star around node 0 with `leaves` neighbors, plus an isolated last node.
Graph star(std::size_t leaves) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  const std::size_t n = leaves + 2;
  sagerl::nd::Matrix<double> x(n, 2);
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = static_cast<double>(i);
  sagerl::nd::Matrix<double> y(n, 2);
  for (std::size_t i = 0; i < n; ++i) y(i, 0) = 1;
  return Graph::from_edges({n, 2, 2, LabelMode::kSingle, 0}, edges, x, y,
                           std::vector<sagerl::graph::Split>(n, sagerl::graph::Split::kTrain));
}

std::shared_ptr<const ValueRegressor> random_regressor(std::size_t m, std::uint64_t seed) {
  auto reg = ValueRegressor::initialized(m, seed);
  SplitMix64 rng(seed + 1);
  for (auto& w : reg.weight().value.flat()) w = sampling::standard_normal(rng);
  reg.bias().value(0, 0) = sampling::standard_normal(rng);
  reg.set_fitted();
  return std::make_shared<const ValueRegressor>(std::move(reg));
}

TEST(Rng, ForkIsDeterministicAndDistinct) {
  const SplitMix64 base(42);
  auto a = base.fork(3), b = base.fork(3), c = base.fork(4);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
}

TEST(Rng, UniformIndexInRange) {
  SplitMix64 rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(sampling::uniform_index(rng, 7), 7u);
  for (int i = 0; i < 1000; ++i) {
    const double u = sampling::uniform_unit(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(UniformExpand, SizesAndMembership) {
  const auto g = sagerl::testing::random_graph(50, 2, 2, LabelMode::kSingle, 0.1, 3);
  SplitMix64 rng(5);
  std::vector<NodeId> frontier{0, 1, 2, 3};
  const auto out = sampling::uniform_expand(g, frontier, 6, rng);
  ASSERT_EQ(out.size(), 24u);
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const auto nb = g.neighbors(frontier[i]);
    for (std::size_t s = 0; s < 6; ++s) {
      const auto u = out[i * 6 + s];
      if (nb.empty()) {
        EXPECT_EQ(u, frontier[i]);
      } else {
        EXPECT_TRUE(std::binary_search(nb.begin(), nb.end(), u));
      }
    }
  }
}

TEST(UniformExpand, IsolatedNodeRepeatsItself) {
  const auto g = star(3);
  SplitMix64 rng(1);
  const std::vector<NodeId> frontier{4};
  EXPECT_EQ(sampling::uniform_expand(g, frontier, 3, rng), (std::vector<NodeId>{4, 4, 4}));
}

TEST(UniformExpand, ChiSquareUniformity) {
  const auto g = star(10);
  SplitMix64 rng(2024);
  std::map<NodeId, double> counts;
  const std::vector<NodeId> frontier{0};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    for (auto u : sampling::uniform_expand(g, frontier, 3, rng)) counts[u] += 1;
  }
  ASSERT_EQ(counts.size(), 10u);
  const double expected = 3.0 * draws / 10;
  double chi2 = 0;
  for (auto [u, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(9);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.001);
}

TEST(UniformExpand, DeterministicForSeed) {
  const auto g = sagerl::testing::random_graph(30, 2, 2, LabelMode::kSingle, 0.2, 4);
  std::vector<NodeId> frontier{0, 5, 9};
  SplitMix64 a(7), b(7);
  EXPECT_EQ(sampling::uniform_expand(g, frontier, 4, a), sampling::uniform_expand(g, frontier, 4, b));
}

TEST(Partition, BalancedPermutation) {
  SplitMix64 rng(9);
  std::vector<NodeId> ids(23);
  std::iota(ids.begin(), ids.end(), NodeId{100});
  const auto parts = sampling::partition_neighbors(ids, 5, rng);
  ASSERT_EQ(parts.size(), 5u);
  std::multiset<NodeId> seen;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    EXPECT_EQ(parts[i].size(), i < 3 ? 5u : 4u);
    seen.insert(parts[i].begin(), parts[i].end());
  }
  EXPECT_EQ(seen, std::multiset<NodeId>(ids.begin(), ids.end()));
}

TEST(ValueSelect, SmallDegreeTakesEveryNeighbor) {
  const auto g = star(3);
  const auto reg = random_regressor(2, 1);
  SplitMix64 rng(3);
  const auto out = sampling::value_select(g, *reg, 0, 5, rng);
  ASSERT_EQ(out.size(), 5u);
  const std::set<NodeId> first(out.begin(), out.begin() + 3);
  EXPECT_EQ(first, (std::set<NodeId>{1, 2, 3}));
  for (auto u : out) EXPECT_TRUE(u >= 1 && u <= 3);
  EXPECT_EQ(sampling::value_select(g, *reg, 4, 2, rng), (std::vector<NodeId>{4, 4}));
}

TEST(ValueSelect, MatchesExhaustiveGroupArgmax) {
  const auto g = sagerl::testing::random_graph(80, 6, 2, LabelMode::kSingle, 0.3, 21);
  SplitMix64 rng(77);
  int partitioned = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto reg = random_regressor(6, 1000 + trial);
    const auto v = static_cast<NodeId>(sampling::uniform_index(rng, g.num_nodes()));
    const std::size_t fanout = 1 + sampling::uniform_index(rng, 8);
    std::vector<std::vector<NodeId>> groups;
    const auto out = sampling::value_select(g, *reg, v, fanout, rng, &groups);
    ASSERT_EQ(out.size(), fanout);
    if (g.degree(v) <= fanout) continue;
    ++partitioned;
    ASSERT_EQ(groups.size(), fanout);
    for (std::size_t i = 0; i < fanout; ++i) {
      NodeId best = 0;
      double best_v = -std::numeric_limits<double>::infinity();
      for (auto u : groups[i]) {
        const double s = reg->predict(g.features().row(v), g.features().row(u));
        if (s > best_v || (s == best_v && u < best)) {
          best = u;
          best_v = s;
        }
      }
      EXPECT_EQ(out[i], best);
    }
  }
  EXPECT_GT(partitioned, 100);
}

TEST(ValueSelect, TiesGoToLowestId) {
  const auto g = star(6);
  auto reg = ValueRegressor(2);  // all-zero weights: every score ties at −1
  reg.set_fitted();
  SplitMix64 rng(4);
  std::vector<std::vector<NodeId>> groups;
  const auto out = sampling::value_select(g, reg, 0, 2, rng, &groups);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(out[i], *std::min_element(groups[i].begin(), groups[i].end()));
  }
}

TEST(Sampler, ValueRequiresFittedRegressor) {
  auto reg = std::make_shared<const ValueRegressor>(3);
  EXPECT_THROW(sampling::Sampler::value(reg), sampling::ConfigError);
  EXPECT_THROW(sampling::Sampler::value(nullptr), sampling::ConfigError);
}

TEST(Sampler, ValueExpandChecksFeatureDim) {
  const auto g = star(4);
  const auto reg = random_regressor(3, 2);
  SplitMix64 rng(1);
  const std::vector<NodeId> frontier{0};
  EXPECT_THROW(sampling::value_expand(g, *reg, frontier, 2, rng), sampling::ConfigError);
}

TEST(BuildTree, SizeLawForBothSamplers) {
  const auto g = sagerl::testing::random_graph(60, 4, 2, LabelMode::kSingle, 0.08, 8);
  const auto reg = random_regressor(4, 3);
  const std::vector<NodeId> roots{0, 1, 2, 3, 4};
  const std::vector<std::size_t> fanouts{4, 3, 2};
  for (const auto& sampler : {sampling::Sampler::uniform(), sampling::Sampler::value(reg)}) {
    SplitMix64 rng(10);
    const auto tree = sampling::build_tree(g, roots, sampler, fanouts, rng);
    ASSERT_EQ(tree.hops.size(), 4u);
    std::size_t expected = roots.size();
    for (std::size_t k = 0; k < tree.hops.size(); ++k) {
      EXPECT_EQ(tree.hops[k].size(), expected);
      if (k < fanouts.size()) expected *= fanouts[k];
    }
    EXPECT_EQ(tree.children(1, 7).size(), 3u);
    EXPECT_EQ(tree.children(1, 7)[0], tree.hops[2][21]);
  }
}

TEST(BuildTree, RejectsEmptyInput) {
  const auto g = star(2);
  SplitMix64 rng(1);
  const std::vector<std::size_t> fanouts{2};
  EXPECT_THROW(sampling::build_tree(g, {}, sampling::Sampler::uniform(), fanouts, rng),
               std::invalid_argument);
  const std::vector<NodeId> roots{0};
  const std::vector<std::size_t> zero{0};
  EXPECT_THROW(sampling::build_tree(g, roots, sampling::Sampler::uniform(), zero, rng),
               std::invalid_argument);
}

}  // namespace
