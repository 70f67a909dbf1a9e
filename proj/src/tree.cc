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

#include "noisetree/tree.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace noisetree {

void TreeParams::Validate(size_t dim) const {
  if (min_leaf < 1) throw std::invalid_argument("min_leaf must be >= 1");
  if (max_depth && *max_depth < 1) {
    throw std::invalid_argument("max_depth must be >= 1 when set");
  }
  if (feature_subset && (*feature_subset < 1 || *feature_subset > dim)) {
    throw std::invalid_argument("feature_subset must be in [1, " +
                                std::to_string(dim) + "]");
  }
}

// ---------------------------------------------------------------------------
// DecisionTree

DecisionTree::DecisionTree(size_t dim, std::vector<Node> nodes)
    : dim_(dim), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("tree has no nodes");
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& nd = nodes_[i];
    if (nd.is_leaf()) continue;
    if (nd.feature < 0 || static_cast<size_t>(nd.feature) >= dim_) {
      throw std::invalid_argument("node " + std::to_string(i) +
                                  " splits on feature out of range");
    }
    if (nd.left <= i || nd.right <= i || nd.left >= nodes_.size() ||
        nd.right >= nodes_.size() || nd.left == nd.right) {
      throw std::invalid_argument("node " + std::to_string(i) +
                                  " has invalid children");
    }
  }
}

DecisionTree DecisionTree::Leaf(size_t dim, uint64_t n_pos, uint64_t n_neg) {
  Node leaf;
  leaf.label = n_pos >= n_neg ? Label::kPositive : Label::kNegative;
  leaf.n_pos = n_pos;
  leaf.n_neg = n_neg;
  return DecisionTree(dim, {leaf});
}

size_t DecisionTree::leaf_count() const {
  return static_cast<size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

size_t DecisionTree::depth() const {
  size_t best = 0;
  std::vector<std::pair<uint32_t, size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [idx, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    const Node& nd = nodes_[idx];
    if (!nd.is_leaf()) {
      stack.push_back({nd.left, d + 1});
      stack.push_back({nd.right, d + 1});
    }
  }
  return best;
}

size_t DecisionTree::LeafIndex(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("feature vector has dimension " +
                                std::to_string(x.size()) + ", tree expects " +
                                std::to_string(dim_));
  }
  uint32_t idx = 0;
  while (!nodes_[idx].is_leaf()) {
    const Node& nd = nodes_[idx];
    idx = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
  }
  return idx;
}

Label DecisionTree::Predict(std::span<const double> x) const {
  return nodes_[LeafIndex(x)].label;
}

void DecisionTree::Serialize(std::ostream& out) const {
  for (const Node& nd : nodes_) {
    if (nd.is_leaf()) {
      out << "L " << (nd.label == Label::kPositive ? "+1" : "-1") << ' '
          << nd.n_pos << ' ' << nd.n_neg << '\n';
    } else {
      out << "N " << nd.feature << ' ' << FormatDouble(nd.threshold) << '\n';
    }
  }
}

std::string DecisionTree::ToString() const {
  std::ostringstream out;
  Serialize(out);
  return out.str();
}

DecisionTree DecisionTree::Deserialize(std::istream& in, size_t dim) {
  std::vector<Node> nodes;
  size_t pending = 1;
  std::string line;
  while (pending > 0) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("tree serialization ended early");
    }
    if (line.empty() || line == "\r") continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    Node nd;
    if (tag == "N") {
      std::string threshold;
      fields >> nd.feature >> threshold;
      if (!fields || nd.feature < 0) {
        throw std::runtime_error("bad internal node line: '" + line + "'");
      }
      nd.threshold = ParseDouble(threshold);
      ++pending;
    } else if (tag == "L") {
      std::string label;
      fields >> label >> nd.n_pos >> nd.n_neg;
      if (!fields || (label != "+1" && label != "-1")) {
        throw std::runtime_error("bad leaf line: '" + line + "'");
      }
      nd.label = label == "+1" ? Label::kPositive : Label::kNegative;
      --pending;
    } else {
      throw std::runtime_error("unknown tree line: '" + line + "'");
    }
    nodes.push_back(nd);
  }
  // Children of internal node i: i + 1 and the node after the left subtree.
  std::vector<uint32_t> subtree(nodes.size(), 1);
  for (size_t i = nodes.size(); i-- > 0;) {
    Node& nd = nodes[i];
    if (nd.is_leaf()) continue;
    nd.left = static_cast<uint32_t>(i + 1);
    nd.right = nd.left + subtree[nd.left];
    subtree[i] = 1 + subtree[nd.left] + subtree[nd.right];
  }
  return DecisionTree(dim, std::move(nodes));
}

// ---------------------------------------------------------------------------
// Induction

std::vector<double> CandidateSplits(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  for (size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i] == sorted[i + 1]) continue;
    double mid = std::midpoint(sorted[i], sorted[i + 1]);
    if (mid >= sorted[i + 1]) mid = sorted[i];
    out.push_back(mid);
  }
  return out;
}

namespace {

// Rows of a node are held as positions into `rows`; order[j] lists the
// positions sorted by feature j, and every node owns the same contiguous
// range [begin, end) in all of them.
class Workspace {
 public:
  Workspace(const Dataset& ds, std::vector<size_t> rows)
      : dim_(ds.dim()), columns_(ds.dim()), order_(ds.dim()) {
    const size_t m = rows.size();
    positive_.resize(m);
    for (size_t pos = 0; pos < m; ++pos) {
      positive_[pos] = ds.label(rows[pos]) == Label::kPositive;
    }
    for (size_t j = 0; j < dim_; ++j) {
      auto& col = columns_[j];
      col.resize(m);
      for (size_t pos = 0; pos < m; ++pos) col[pos] = ds.feature(rows[pos], j);
      auto& ord = order_[j];
      ord.resize(m);
      std::iota(ord.begin(), ord.end(), uint32_t{0});
      std::stable_sort(ord.begin(), ord.end(), [&col](uint32_t a, uint32_t b) {
        return col[a] < col[b];
      });
    }
    goes_left_.resize(m);
    buffer_.resize(m);
  }

  size_t dim() const { return dim_; }

  uint64_t CountPositive(size_t begin, size_t end) const {
    uint64_t n = 0;
    for (size_t k = begin; k < end; ++k) n += positive_[order_[0][k]];
    return n;
  }

  std::optional<ScoredSplit> FindBest(size_t begin, size_t end,
                                      uint64_t n_pos,
                                      std::span<const size_t> features,
                                      const TreeParams& params) const {
    const uint64_t n = end - begin;
    const uint64_t min_leaf = params.min_leaf;
    std::optional<ScoredSplit> best;
    double best_score = kMinSplitScore;
    for (size_t j : features) {
      const auto& ord = order_[j];
      const auto& col = columns_[j];
      uint64_t left = 0;
      uint64_t left_pos = 0;
      for (size_t k = begin; k + 1 < end; ++k) {
        const uint32_t pos = ord[k];
        ++left;
        left_pos += positive_[pos];
        const double v = col[pos];
        const double next = col[ord[k + 1]];
        if (v == next) continue;
        const uint64_t right = n - left;
        if (left < min_leaf) continue;
        if (right < min_leaf) break;
        const SplitStats s{n, left, right, n_pos, left_pos, n_pos - left_pos};
        const double score = SplitScore(params.criterion, s);
        if (score > best_score) {
          best_score = score;
          double t = std::midpoint(v, next);
          if (t >= next) t = v;
          best = ScoredSplit{SplitRule{j, t}, score};
        }
      }
    }
    return best;
  }

  // Stable partition of [begin, end) in every feature order; returns the
  // size of the left part.
  size_t Partition(size_t begin, size_t end, const SplitRule& rule) {
    const auto& col = columns_[rule.feature];
    size_t n_left = 0;
    for (size_t k = begin; k < end; ++k) {
      const uint32_t pos = order_[0][k];
      goes_left_[pos] = col[pos] <= rule.threshold;
      n_left += goes_left_[pos];
    }
    for (auto& ord : order_) {
      size_t l = begin;
      size_t r = 0;
      for (size_t k = begin; k < end; ++k) {
        const uint32_t pos = ord[k];
        if (goes_left_[pos]) {
          ord[l++] = pos;
        } else {
          buffer_[r++] = pos;
        }
      }
      std::copy(buffer_.begin(), buffer_.begin() + r, ord.begin() + l);
    }
    return n_left;
  }

 private:
  size_t dim_;
  std::vector<std::vector<double>> columns_;
  std::vector<std::vector<uint32_t>> order_;
  std::vector<uint8_t> positive_;
  std::vector<uint8_t> goes_left_;
  std::vector<uint32_t> buffer_;
};

std::vector<size_t> DrawFeatures(size_t dim, const TreeParams& params,
                                 Rng* rng) {
  std::vector<size_t> features(dim);
  std::iota(features.begin(), features.end(), size_t{0});
  if (!params.feature_subset || *params.feature_subset >= dim) return features;
  if (rng == nullptr) {
    throw std::invalid_argument("feature_subset requires a random source");
  }
  const size_t k = *params.feature_subset;
  for (size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<size_t> pick(i, dim - 1);
    std::swap(features[i], features[pick(*rng)]);
  }
  features.resize(k);
  std::sort(features.begin(), features.end());
  return features;
}

}  // namespace

std::optional<ScoredSplit> BestSplit(const Dataset& ds,
                                     std::span<const size_t> rows,
                                     const TreeParams& params, Rng* rng) {
  params.Validate(ds.dim());
  if (rows.size() < 2) return std::nullopt;
  Workspace ws(ds, std::vector<size_t>(rows.begin(), rows.end()));
  const auto features = DrawFeatures(ds.dim(), params, rng);
  return ws.FindBest(0, rows.size(), ws.CountPositive(0, rows.size()),
                     features, params);
}

DecisionTree GrowTree(const Dataset& ds, std::vector<size_t> rows,
                      const TreeParams& params, Rng& rng) {
  params.Validate(ds.dim());
  if (rows.empty()) throw std::invalid_argument("cannot fit a tree on no data");
  if (rows.size() > std::numeric_limits<uint32_t>::max()) {
    throw std::invalid_argument("too many rows");
  }
  const size_t m = rows.size();
  Workspace ws(ds, std::move(rows));

  struct Task {
    size_t begin, end, depth;
    int64_t parent;
    bool is_left;
  };
  std::vector<DecisionTree::Node> nodes;
  std::vector<Task> stack{{0, m, 0, -1, false}};
  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    const auto idx = static_cast<uint32_t>(nodes.size());
    if (task.parent >= 0) {
      auto& parent = nodes[static_cast<size_t>(task.parent)];
      (task.is_left ? parent.left : parent.right) = idx;
    }
    const uint64_t n = task.end - task.begin;
    const uint64_t n_pos = ws.CountPositive(task.begin, task.end);

    DecisionTree::Node node;
    node.n_pos = n_pos;
    node.n_neg = n - n_pos;
    node.label = n_pos >= n - n_pos ? Label::kPositive : Label::kNegative;

    std::optional<ScoredSplit> split;
    const bool depth_ok = !params.max_depth || task.depth < *params.max_depth;
    if (n >= 2 * params.min_leaf && depth_ok) {
      const auto features = DrawFeatures(ws.dim(), params, &rng);
      split = ws.FindBest(task.begin, task.end, n_pos, features, params);
    }
    if (!split) {
      nodes.push_back(node);
      continue;
    }
    node.feature = static_cast<int32_t>(split->rule.feature);
    node.threshold = split->rule.threshold;
    nodes.push_back(node);
    const size_t n_left = ws.Partition(task.begin, task.end, split->rule);
    const size_t mid = task.begin + n_left;
    // Right pushed first so the left subtree is emitted first (pre-order).
    stack.push_back({mid, task.end, task.depth + 1, idx, false});
    stack.push_back({task.begin, mid, task.depth + 1, idx, true});
  }
  return DecisionTree(ds.dim(), std::move(nodes));
}

DecisionTree FitTree(const Dataset& ds, const TreeParams& params) {
  if (ds.empty()) throw std::invalid_argument("cannot fit a tree on no data");
  std::vector<size_t> rows(ds.size());
  std::iota(rows.begin(), rows.end(), size_t{0});
  Rng rng(params.seed);
  return GrowTree(ds, std::move(rows), params, rng);
}

DecisionTree FitTree(const NoisyDataset& ds, const TreeParams& params) {
  return FitTree(ds.data, params);
}

bool TreesEqual(const DecisionTree& a, const DecisionTree& b,
                double threshold_tol) {
  std::vector<std::pair<uint32_t, uint32_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [ia, ib] = stack.back();
    stack.pop_back();
    const auto& na = a.nodes()[ia];
    const auto& nb = b.nodes()[ib];
    if (na.is_leaf() != nb.is_leaf()) return false;
    if (na.is_leaf()) {
      if (na.label != nb.label) return false;
      continue;
    }
    if (na.feature != nb.feature) return false;
    if (!(std::abs(na.threshold - nb.threshold) <= threshold_tol)) return false;
    stack.push_back({na.left, nb.left});
    stack.push_back({na.right, nb.right});
  }
  return true;
}

double Accuracy(const DecisionTree& tree, const Dataset& ds) {
  if (ds.empty()) throw std::invalid_argument("accuracy of an empty dataset");
  size_t correct = 0;
  for (size_t i = 0; i < ds.size(); ++i) {
    correct += tree.Predict(ds.row(i)) == ds.label(i);
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

}  // namespace noisetree
