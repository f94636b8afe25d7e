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
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sagerl/graph/graph.hpp"

namespace sagerl::rl {

using graph::NodeId;

enum class RewardMode { kAllHop, kLastHop };

const char* to_string(RewardMode m);
RewardMode reward_mode_from_string(const std::string& s);

/// One root's pass through a training batch: its first-hop sample and the
/// per-hop rewards R^1..R^K (zeros below K in last-hop mode).
struct EpisodeRecord {
  NodeId root = 0;
  std::vector<NodeId> first_hop;
  std::vector<double> rewards;

  std::size_t hops() const { return rewards.size(); }
};

/// Discounted return Σ_k γ^k R^{k+1}.
double discounted_return(const std::vector<double>& rewards, double gamma);

struct ValueEntry {
  double return_sum = 0;    // G_sum
  std::uint64_t visits = 0;  // C

  friend bool operator==(const ValueEntry&, const ValueEntry&) = default;
};

/// Sparse (v, u) → (G_sum, C) accumulator over episodes.
class ValueTable {
 public:
  /// Credits the episode's discounted return to every first-hop id u with
  /// its multiplicity m_u: G_sum += m_u·G, C += m_u·K.
  void record_episode(const EpisodeRecord& episode, double gamma);

  /// G_sum / C, or nullopt when (v, u) was never visited.
  std::optional<double> value(NodeId v, NodeId u) const;
  const ValueEntry* find(NodeId v, NodeId u) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  struct Row {
    NodeId v;
    NodeId u;
    ValueEntry entry;
  };
  /// All entries ordered by (v, u).
  std::vector<Row> sorted_rows() const;

  /// Text export, one "v u G_sum C" line per key ordered by (v, u), G_sum
  /// printed with 17 significant digits.
  void save(const std::filesystem::path& file) const;
  static ValueTable load(const std::filesystem::path& file);

  friend bool operator==(const ValueTable&, const ValueTable&) = default;

 private:
  static std::uint64_t key(NodeId v, NodeId u) {
    return (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint64_t>(u);
  }
  std::unordered_map<std::uint64_t, ValueEntry> entries_;
};

}  // namespace sagerl::rl
