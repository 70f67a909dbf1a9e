/*
 * Copyright 2026 The noisetree Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "noisetree/forest.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "noisetree/random.h"

namespace noisetree {

std::string ForestModeName(ForestMode mode) {
  return mode == ForestMode::kGreedy ? "greedy" : "purely_random";
}

ForestMode ParseForestMode(std::string_view name) {
  if (name == "greedy") return ForestMode::kGreedy;
  if (name == "purely_random") return ForestMode::kPurelyRandom;
  throw std::invalid_argument("unknown forest mode '" + std::string(name) +
                              "'");
}

RandomForest::RandomForest(ForestMode mode, std::vector<DecisionTree> trees)
    : mode_(mode), trees_(std::move(trees)) {
  if (trees_.empty()) throw std::invalid_argument("forest has no trees");
}

Label RandomForest::Predict(std::span<const double> x) const {
  long votes = 0;
  for (const auto& tree : trees_) votes += ToInt(tree.Predict(x));
  return votes >= 0 ? Label::kPositive : Label::kNegative;
}

void RandomForest::Serialize(std::ostream& out) const {
  out << "FOREST " << trees_.size() << ' ' << ForestModeName(mode_) << '\n';
  for (const auto& tree : trees_) tree.Serialize(out);
}

std::string RandomForest::ToString() const {
  std::ostringstream out;
  Serialize(out);
  return out.str();
}

RandomForest RandomForest::Deserialize(std::istream& in, size_t dim) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty forest input");
  std::istringstream header(line);
  std::string tag, mode;
  size_t n_trees = 0;
  header >> tag >> n_trees >> mode;
  if (!header || tag != "FOREST" || n_trees == 0) {
    throw std::runtime_error("bad forest header: '" + line + "'");
  }
  std::vector<DecisionTree> trees;
  trees.reserve(n_trees);
  for (size_t i = 0; i < n_trees; ++i) {
    trees.push_back(DecisionTree::Deserialize(in, dim));
  }
  return RandomForest(ParseForestMode(mode), std::move(trees));
}

namespace {

struct RandomNode {
  std::vector<size_t> rows;
  std::optional<SplitRule> rule;
  size_t left = 0;
  size_t right = 0;
  bool expandable = false;
};

bool HasSpread(const Dataset& ds, std::span<const size_t> rows, size_t j) {
  for (size_t r : rows) {
    if (ds.feature(r, j) != ds.feature(rows.front(), j)) return true;
  }
  return false;
}

bool IsExpandable(const Dataset& ds, std::span<const size_t> rows) {
  if (rows.size() < 2) return false;
  for (size_t j = 0; j < ds.dim(); ++j) {
    if (HasSpread(ds, rows, j)) return true;
  }
  return false;
}

}  // namespace

DecisionTree GrowPurelyRandomTree(const Dataset& ds,
                                  std::span<const size_t> rows,
                                  size_t k_splits, Rng& rng) {
  if (rows.empty()) throw std::invalid_argument("cannot fit a tree on no data");
  std::vector<RandomNode> work(1);
  work[0].rows.assign(rows.begin(), rows.end());
  work[0].expandable = IsExpandable(ds, work[0].rows);

  std::uniform_int_distribution<size_t> pick_feature(0, ds.dim() - 1);
  size_t done = 0;
  while (done < k_splits) {
    std::vector<size_t> open;
    for (size_t i = 0; i < work.size(); ++i) {
      if (!work[i].rule && work[i].expandable) open.push_back(i);
    }
    if (open.empty()) break;
    std::uniform_int_distribution<size_t> pick_node(0, open.size() - 1);
    const size_t target = open[pick_node(rng)];
    const size_t j = pick_feature(rng);
    const auto& node_rows = work[target].rows;
    double lo = ds.feature(node_rows.front(), j);
    double hi = lo;
    for (size_t r : node_rows) {
      lo = std::min(lo, ds.feature(r, j));
      hi = std::max(hi, ds.feature(r, j));
    }
    if (lo == hi) continue;  // constant feature here; draw again
    double t = std::uniform_real_distribution<double>(lo, hi)(rng);
    if (t >= hi) t = std::nextafter(hi, lo);

    RandomNode left, right;
    for (size_t r : node_rows) {
      (ds.feature(r, j) <= t ? left.rows : right.rows).push_back(r);
    }
    left.expandable = IsExpandable(ds, left.rows);
    right.expandable = IsExpandable(ds, right.rows);
    work[target].rule = SplitRule{j, t};
    work[target].left = work.size();
    work[target].right = work.size() + 1;
    work.push_back(std::move(left));
    work.push_back(std::move(right));
    ++done;
  }

  // Re-emit in pre-order.
  std::vector<DecisionTree::Node> nodes;
  struct Task {
    size_t work_index;
    int64_t parent;
    bool is_left;
  };
  std::vector<Task> stack{{0, -1, false}};
  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    const auto idx = static_cast<uint32_t>(nodes.size());
    if (task.parent >= 0) {
      auto& parent = nodes[static_cast<size_t>(task.parent)];
      (task.is_left ? parent.left : parent.right) = idx;
    }
    const RandomNode& src = work[task.work_index];
    DecisionTree::Node nd;
    for (size_t r : src.rows) {
      (ds.label(r) == Label::kPositive ? nd.n_pos : nd.n_neg) += 1;
    }
    nd.label = nd.n_pos >= nd.n_neg ? Label::kPositive : Label::kNegative;
    if (src.rule) {
      nd.feature = static_cast<int32_t>(src.rule->feature);
      nd.threshold = src.rule->threshold;
      stack.push_back({src.right, idx, false});
      stack.push_back({src.left, idx, true});
    }
    nodes.push_back(nd);
  }
  return DecisionTree(ds.dim(), std::move(nodes));
}

RandomForest FitForest(const Dataset& ds, const ForestParams& params) {
  if (ds.empty()) throw std::invalid_argument("cannot fit a forest on no data");
  if (params.n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
  TreeParams tree_params = params.tree_params;
  if (params.mode == ForestMode::kGreedy && !tree_params.feature_subset) {
    tree_params.feature_subset = static_cast<size_t>(
        std::ceil(std::sqrt(static_cast<double>(ds.dim()))));
  }
  tree_params.Validate(ds.dim());

  std::vector<std::optional<DecisionTree>> slots(params.n_trees);
  ParallelFor(params.n_trees, params.threads, [&](size_t t) {
    Rng rng(DeriveSeed(params.seed, t));
    std::vector<size_t> rows(ds.size());
    if (params.bootstrap) {
      std::uniform_int_distribution<size_t> draw(0, ds.size() - 1);
      for (auto& r : rows) r = draw(rng);
    } else {
      std::iota(rows.begin(), rows.end(), size_t{0});
    }
    if (params.mode == ForestMode::kGreedy) {
      slots[t].emplace(GrowTree(ds, std::move(rows), tree_params, rng));
    } else {
      slots[t].emplace(GrowPurelyRandomTree(ds, rows, params.k_splits, rng));
    }
  });
  std::vector<DecisionTree> trees;
  trees.reserve(slots.size());
  for (auto& slot : slots) trees.push_back(std::move(*slot));
  return RandomForest(params.mode, std::move(trees));
}

double Accuracy(const RandomForest& forest, const Dataset& ds) {
  if (ds.empty()) throw std::invalid_argument("accuracy of an empty dataset");
  size_t correct = 0;
  for (size_t i = 0; i < ds.size(); ++i) {
    correct += forest.Predict(ds.row(i)) == ds.label(i);
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

}  // namespace noisetree
