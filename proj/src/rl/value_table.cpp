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

#include "sagerl/rl/value_table.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace sagerl::rl {

const char* to_string(RewardMode m) { return m == RewardMode::kAllHop ? "all_hop" : "last_hop"; }

RewardMode reward_mode_from_string(const std::string& s) {
  if (s == "all_hop") return RewardMode::kAllHop;
  if (s == "last_hop") return RewardMode::kLastHop;
  throw std::invalid_argument("unknown reward mode \"" + s + "\" (all_hop | last_hop)");
}

double discounted_return(const std::vector<double>& rewards, double gamma) {
  double g = 0;
  double w = 1;
  for (double r : rewards) {
    g += w * r;
    w *= gamma;
  }
  return g;
}

void ValueTable::record_episode(const EpisodeRecord& episode, double gamma) {
  const double g = discounted_return(episode.rewards, gamma);
  const auto hops = static_cast<std::uint64_t>(episode.hops());
  std::map<NodeId, std::uint64_t> multiplicity;
  for (auto u : episode.first_hop) ++multiplicity[u];
  for (auto [u, m] : multiplicity) {
    auto& e = entries_[key(episode.root, u)];
    e.return_sum += static_cast<double>(m) * g;
    e.visits += m * hops;
  }
}

const ValueEntry* ValueTable::find(NodeId v, NodeId u) const {
  auto it = entries_.find(key(v, u));
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<double> ValueTable::value(NodeId v, NodeId u) const {
  const auto* e = find(v, u);
  if (!e || e->visits == 0) return std::nullopt;
  return e->return_sum / static_cast<double>(e->visits);
}

std::vector<ValueTable::Row> ValueTable::sorted_rows() const {
  std::vector<Row> rows;
  rows.reserve(entries_.size());
  for (const auto& [k, e] : entries_) {
    rows.push_back({static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xFFFFFFFFu), e});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return std::tie(a.v, a.u) < std::tie(b.v, b.u); });
  return rows;
}

void ValueTable::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw std::runtime_error(file.string() + ": cannot open for writing");
  char buf[64];
  for (const auto& r : sorted_rows()) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, r.entry.return_sum,
                                 std::chars_format::general, 17);
    out << r.v << ' ' << r.u << ' ';
    out.write(buf, p - buf);
    out << ' ' << r.entry.visits << '\n';
  }
}

ValueTable ValueTable::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error(file.string() + ": cannot open file");
  ValueTable t;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::uint64_t v = 0, u = 0, c = 0;
    std::string g;
    if (!(ss >> v >> u >> g >> c)) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": expected \"v u G_sum C\"");
    }
    double gv = 0;
    auto [p, ec] = std::from_chars(g.data(), g.data() + g.size(), gv);
    if (ec != std::errc() || c == 0) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": bad entry");
    }
    t.entries_[key(static_cast<NodeId>(v), static_cast<NodeId>(u))] = {gv, c};
  }
  return t;
}

}  // namespace sagerl::rl
