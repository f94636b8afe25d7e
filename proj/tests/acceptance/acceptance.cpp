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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion, exit status 1 if
// any criterion fails. Tolerances are fixed below.

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "sagerl/bench/experiment.hpp"
#include "sagerl/bench/report.hpp"
#include "sagerl/graph/dataset_io.hpp"
#include "sagerl/graph/synthetic.hpp"
#include "sagerl/rl/pipeline.hpp"
#include "sagerl/rl/value_regressor.hpp"
#include "sagerl/rl/value_table.hpp"

namespace {

using namespace sagerl;
namespace fs = std::filesystem;
using graph::NodeId;
using nd::LabelMode;
using sampling::SplitMix64;

constexpr double kGradTol = 1e-4;
constexpr double kFdStep = 1e-5;
constexpr double kKinkMargin = 1e-3;  // min |ReLU input| for a graded init
constexpr int kInitRedraws = 100;
constexpr double kTableTol = 1e-12;
constexpr int kRegressorProbes = 10000;
constexpr double kPlantedMseTol = 1e-3;
constexpr double kChiSquarePMin = 0.001;
constexpr int kArgmaxCases = 1000;
constexpr double kSyntheticMargin = 0.02;
constexpr double kPubmedTol = 0.02;
constexpr double kPubmedUniform = 0.879;
constexpr double kPubmedLastHop = 0.885;
constexpr double kParamTol = 0.15;
constexpr double kConcatMb = 4.7;
constexpr double kAddMb = 2.5;

struct Outcome {
  enum Status { kPass, kFail, kSkip } status;
  std::string detail;
};

Outcome verdict(bool ok, std::string detail) { return {ok ? Outcome::kPass : Outcome::kFail, std::move(detail)}; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

/// Tally for the size law |hop k| = |roots|·Π fanouts[<k].
struct TreeLaw {
  std::size_t trees = 0;
  std::size_t violations = 0;

  void check(const sampling::SampleTree& t) {
    ++trees;
    std::size_t expected = t.num_roots();
    if (t.hops.size() != t.fanouts.size() + 1) {
      ++violations;
      return;
    }
    for (std::size_t k = 0; k < t.hops.size(); ++k) {
      if (t.hops[k].size() != expected) ++violations;
      if (k < t.fanouts.size()) expected *= t.fanouts[k];
    }
  }
};
TreeLaw tree_law;

Outcome gradient_oracle() {
  double worst = 0;
  int configs = 0;
  int redraws = 0;
  for (auto agg : {model::Aggregator::kMeanConcat, model::Aggregator::kMeanAdd}) {
    for (auto mode : {LabelMode::kSingle, LabelMode::kMulti}) {
      const auto g = testing::random_graph(30, 7, 3, mode, 0.15, 41 + static_cast<int>(mode));
      for (std::size_t depth = 1; depth <= 3; ++depth) {
        std::vector<std::size_t> fanouts{3, 2, 2};
        fanouts.resize(depth);
        model::SageConfig cfg;
        cfg.aggregator = agg;
        cfg.layers = depth;
        cfg.fanouts = fanouts;
        cfg.hidden_dim = 5;
        SplitMix64 rng(200 + depth);
        const std::vector<NodeId> roots{0, 3, 7, 12, 19, 28};
        const auto tree = sampling::build_tree(g, roots, sampling::Sampler::uniform(), fanouts, rng);
        tree_law.check(tree);
        // Redraw the init until no ReLU input sits within reach of the FD step.
        auto params = model::SageParams<double>::init(cfg, 7, 3, 100 + depth);
        int draw = 0;
        while (testing::kink_margin(g, tree, params, depth) < kKinkMargin) {
          if (++draw == kInitRedraws) return {Outcome::kFail, "no kink-free init found"};
          params = model::SageParams<double>::init(cfg, 7, 3, 100 + depth + 1000 * draw);
        }
        redraws += draw;
        worst = std::max(worst, testing::check_model_gradients(g, tree, params, depth, kFdStep).worst);

        // Auxiliary heads: gradient of each head's own loss w.r.t. that head.
        const auto fwd = model::forward(g, tree, params, depth);
        const auto labels = model::gather_labels<double>(g, roots);
        for (std::size_t d = 1; d < depth; ++d) {
          params.zero_grad();
          model::aux_loss_and_backward(labels, mode, params, fwd.cache, d);
          for (auto* p : {&params.heads[d - 1].weight, &params.heads[d - 1].bias}) {
            std::vector<double> x(p->value.flat().begin(), p->value.flat().end());
            const auto f = [&](std::span<const double> v) {
              std::copy(v.begin(), v.end(), p->value.flat().begin());
              return nd::classification_loss(mode, model::head_logits(params, fwd.cache, d), labels).loss;
            };
            const auto numeric = nd::finite_diff_grad(f, x, kFdStep);
            std::copy(x.begin(), x.end(), p->value.flat().begin());
            worst = std::max(worst, nd::max_relative_error(p->grad.flat(), numeric));
          }
        }
        ++configs;
      }
    }
  }
  return verdict(worst < kGradTol, fmt("%d configs, worst relative error %.2e (tol %.0e), %d init redraws for ReLU margin %.0e", configs, worst,
                                               kGradTol, redraws, kKinkMargin));
}

Outcome value_table_oracle() {
  double worst = 0;
  bool counts_ok = true;
  bool last_hop_exact = true;
  SplitMix64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const auto eps = testing::random_episodes(100, 15, 1000 + rep);
    const double gamma = 0.001 + 0.999 * sampling::uniform_unit(rng);
    for (bool last_hop : {false, true}) {
      rl::ValueTable table, zeroed_all_hop;
      testing::ReplayOracle oracle;
      for (const auto& ep : eps) {
        auto e = ep;
        if (last_hop) std::fill(e.rewards.begin(), e.rewards.end() - 1, 0.0);
        table.record_episode(e, gamma);
        oracle.add(e, gamma);
        zeroed_all_hop.record_episode(testing::zero_prefix(ep), gamma);
      }
      if (table.size() != oracle.cells.size()) counts_ok = false;
      for (const auto& [k, c] : oracle.cells) {
        const auto* e = table.find(k.first, k.second);
        if (!e || e->visits != c.second) {
          counts_ok = false;
          continue;
        }
        worst = std::max(worst, std::abs(e->return_sum - c.first));
      }
      if (last_hop && !(table == zeroed_all_hop)) last_hop_exact = false;
    }
  }
  return verdict(worst <= kTableTol && counts_ok && last_hop_exact,
                 fmt("max |G_sum - oracle| %.2e (tol %.0e), counts %s, last_hop == zeroed all_hop %s", worst,
                     kTableTol, counts_ok ? "exact" : "MISMATCH", last_hop_exact ? "exact" : "MISMATCH"));
}

Outcome regressor_range_and_fit() {
  SplitMix64 rng(11);
  const std::size_t m = 16;
  double highest = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kRegressorProbes; ++i) {
    rl::ValueRegressor reg(m);
    for (auto& w : reg.weight().value.flat()) w = 2 * sampling::standard_normal(rng);
    reg.bias().value(0, 0) = 2 * sampling::standard_normal(rng);
    std::vector<double> xv(m), xu(m);
    for (auto& v : xv) v = 3 * sampling::standard_normal(rng);
    for (auto& v : xu) v = 3 * sampling::standard_normal(rng);
    highest = std::max(highest, reg.predict(xv, xu));
  }

  const std::size_t fm = 32;
  const std::size_t nodes = 2000;
  nd::Matrix<double> x(nodes, fm);
  for (auto& v : x.flat()) v = sampling::standard_normal(rng);
  auto planted = rl::ValueRegressor::initialized(fm, 12);
  for (auto& w : planted.weight().value.flat()) w = 0.05 * sampling::standard_normal(rng);
  planted.bias().value(0, 0) = 0.5;
  std::vector<rl::ValueSample> samples;
  for (int i = 0; i < 20000; ++i) {
    const auto v = static_cast<NodeId>(sampling::uniform_index(rng, nodes));
    const auto u = static_cast<NodeId>(sampling::uniform_index(rng, nodes));
    samples.push_back({v, u, planted.predict(x.row(v), x.row(u))});
  }
  auto reg = rl::ValueRegressor::initialized(fm, 13);
  const rl::RLConfig schedule;  // 50 epochs, batch 512, lr 0.001
  const auto hist = rl::fit_regressor(reg, samples, x, schedule, 14);
  const double mse = hist.epoch_mse.back();
  return verdict(highest <= -1.0 && mse < kPlantedMseTol,
                 fmt("max over %d probes %.6f (<= -1), planted fit MSE %.2e after %zu epochs (tol %.0e)",
                     kRegressorProbes, highest, mse, hist.epoch_mse.size(), kPlantedMseTol));
}

Outcome sampler_statistics() {
  // Chi-square on a degree-10 star centre.
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= 10; ++i) edges.emplace_back(0, i);
  nd::Matrix<double> y(11, 2);
  for (std::size_t i = 0; i < 11; ++i) y(i, 0) = 1;
  const auto star = graph::Graph::from_edges({11, 1, 2, LabelMode::kSingle, 0}, edges, nd::Matrix<double>(11, 1), y,
                                             std::vector<graph::Split>(11, graph::Split::kTrain));
  SplitMix64 rng(2024);
  std::map<NodeId, double> counts;
  const int draws = 100000;
  const std::vector<NodeId> centre{0};
  for (int i = 0; i < draws; ++i) {
    for (auto u : sampling::uniform_expand(star, centre, 3, rng)) counts[u] += 1;
  }
  const double expected = 3.0 * draws / 10;
  double chi2 = 0;
  for (auto [u, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(9), chi2));

  // Partitioned argmax against exhaustive per-group evaluation.
  const auto g = testing::random_graph(120, 6, 2, LabelMode::kSingle, 0.2, 99);
  int mismatches = 0, partitioned = 0;
  for (int c = 0; c < kArgmaxCases; ++c) {
    rl::ValueRegressor reg(6);
    for (auto& w : reg.weight().value.flat()) w = sampling::standard_normal(rng);
    reg.bias().value(0, 0) = sampling::standard_normal(rng);
    reg.set_fitted();
    const auto v = static_cast<NodeId>(sampling::uniform_index(rng, g.num_nodes()));
    const std::size_t fanout = 1 + sampling::uniform_index(rng, 10);
    std::vector<std::vector<NodeId>> groups;
    const auto out = sampling::value_select(g, reg, v, fanout, rng, &groups);
    if (out.size() != fanout) ++mismatches;
    if (g.degree(v) <= fanout) continue;
    ++partitioned;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      NodeId best = 0;
      double best_v = -std::numeric_limits<double>::infinity();
      for (auto u : groups[i]) {
        const double s = reg.predict(g.features().row(v), g.features().row(u));
        if (s > best_v || (s == best_v && u < best)) {
          best = u;
          best_v = s;
        }
      }
      if (out[i] != best) ++mismatches;
    }
  }

  // Size law on trees from both samplers.
  auto reg = rl::ValueRegressor::initialized(6, 5);
  reg.set_fitted();
  const auto value = sampling::Sampler::value(std::make_shared<const rl::ValueRegressor>(reg));
  for (int t = 0; t < 50; ++t) {
    std::vector<NodeId> roots;
    for (int r = 0; r < 1 + t % 7; ++r) roots.push_back(static_cast<NodeId>(sampling::uniform_index(rng, 120)));
    const std::vector<std::size_t> fanouts{1 + static_cast<std::size_t>(t % 4), 3, 2};
    tree_law.check(sampling::build_tree(g, roots, sampling::Sampler::uniform(), fanouts, rng));
    tree_law.check(sampling::build_tree(g, roots, value, fanouts, rng));
  }
  return verdict(p > kChiSquarePMin && mismatches == 0 && partitioned > 0 && tree_law.violations == 0,
                 fmt("chi-square p = %.4f (> %.3f), argmax mismatches %d over %d cases (%d partitioned), "
                     "size law violations %zu over %zu trees",
                     p, kChiSquarePMin, mismatches, kArgmaxCases, partitioned, tree_law.violations, tree_law.trees));
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (double x : xs) s += fmt("%s%.3f", s.empty() ? "" : " ", x);
  return s;
}

Outcome synthetic_end_to_end() {
  bench::ExperimentConfig cfg;
  cfg.synthetic = graph::SyntheticSpec{};  // 2000 nodes, 4 communities, M=32, p_inf=0.5, degree 20
  cfg.dataset_name = "synthetic";
  cfg.sage.layers = 2;
  cfg.sage.fanouts = {10, 5};
  cfg.sage.epochs = 10;
  cfg.sage.track_validation = false;
  cfg.seeds = {0, 1, 2, 3, 4};
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = bench::load_graph(cfg);
  const auto rows = bench::run_bench(cfg, g);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double delta = rows[1].f1_mean - rows[0].f1_mean;
  return verdict(delta >= kSyntheticMargin && secs < 600,
                 fmt("uniform %.4f [%s], rl %.4f [%s], delta %+.4f (need >= %.2f), %.0f s", rows[0].f1_mean,
                     join(rows[0].f1_per_seed).c_str(), rows[1].f1_mean, join(rows[1].f1_per_seed).c_str(), delta,
                     kSyntheticMargin, secs));
}

Outcome pubmed_reproduction() {
  const char* dir = std::getenv("SAGERL_PUBMED_DIR");
  if (!dir || !fs::exists(fs::path(dir) / "meta.json")) {
    return {Outcome::kSkip, "set SAGERL_PUBMED_DIR to a converted PubMed dataset to run"};
  }
  bench::ExperimentConfig cfg;
  cfg.dataset_dir = dir;
  cfg.dataset_name = "pubmed";
  cfg.rl.reward_mode = rl::RewardMode::kLastHop;
  const auto g = bench::load_graph(cfg);
  const auto rows = bench::run_bench(cfg, g);
  const double uni = rows[0].f1_mean, rl_f1 = rows[1].f1_mean;
  const bool ok = std::abs(uni - kPubmedUniform) <= kPubmedTol && std::abs(rl_f1 - kPubmedLastHop) <= kPubmedTol &&
                  rl_f1 >= uni;
  return verdict(ok, fmt("uniform %.4f (target %.3f), last-hop rl %.4f (target %.3f), tol %.2f", uni, kPubmedUniform,
                         rl_f1, kPubmedLastHop, kPubmedTol));
}

Outcome parameter_size() {
  const auto mb = [](model::Aggregator agg) {
    return 4.0 * static_cast<double>(model::sage_parameter_count(agg, 50, 512, 121, 2)) / (1024.0 * 1024.0);
  };
  const double concat = mb(model::Aggregator::kMeanConcat);
  const double add = mb(model::Aggregator::kMeanAdd);
  model::SageConfig cfg;
  const auto live = model::SageParams<float>::init(cfg, 50, 121, 0);
  const bool consistent = model::param_bytes(live) ==
                          4 * model::sage_parameter_count(model::Aggregator::kMeanConcat, 50, 512, 121, 2);
  bool ordered = true;
  for (std::size_t m : {1, 50, 602})
    for (std::size_t h : {1, 128, 512})
      for (std::size_t k : {1, 2, 3})
        ordered = ordered && model::sage_parameter_count(model::Aggregator::kMeanAdd, m, h, 121, k) <
                                 model::sage_parameter_count(model::Aggregator::kMeanConcat, m, h, 121, k);
  const bool ok = std::abs(concat - kConcatMb) <= kParamTol * kConcatMb && std::abs(add - kAddMb) <= kParamTol * kAddMb &&
                  ordered && consistent;
  return verdict(ok, fmt("mean_concat %.3f MB (target %.1f), mean_add %.3f MB (target %.1f), tol %.0f%%, "
                         "mean_add < mean_concat %s",
                         concat, kConcatMb, add, kAddMb, 100 * kParamTol, ordered ? "always" : "VIOLATED"));
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  bench::ExperimentConfig cfg;
  graph::SyntheticSpec spec;
  spec.num_nodes = 400;
  cfg.synthetic = spec;
  cfg.dataset_name = "synthetic";
  cfg.sage.fanouts = {6, 3};
  cfg.sage.hidden_dim = 32;
  cfg.sage.epochs = 3;
  cfg.rl.fit_epochs = 10;
  cfg.seeds = {0, 1, 2};
  const auto base = fs::temp_directory_path() / "sagerl_acceptance_det";
  fs::remove_all(base);
  std::vector<fs::path> dirs{base / "a", base / "b"};
  for (const auto& d : dirs) bench::report(bench::run_bench(cfg, bench::load_graph(cfg)), d);
  bool same = true;
  for (const char* f : {"results.json", "results.txt"}) same = same && slurp(dirs[0] / f) == slurp(dirs[1] / f);
  return verdict(same, fmt("results.json and results.txt %s across two runs", same ? "byte-identical" : "DIFFER"));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 gradient oracle", gradient_oracle},
      {"2 value-table oracle", value_table_oracle},
      {"3 regressor range and fit", regressor_range_and_fit},
      {"4 sampler statistics", sampler_statistics},
      {"5 synthetic end-to-end", synthetic_end_to_end},
      {"6 PubMed reproduction", pubmed_reproduction},
      {"7 parameter size", parameter_size},
      {"8 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {Outcome::kFail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char* tag = o.status == Outcome::kPass ? "PASS" : o.status == Outcome::kFail ? "FAIL" : "SKIP";
    failed += o.status == Outcome::kFail;
    std::printf("%s  [%s] %s (%.1f s)\n", tag, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
