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

// Top-down greedy binary decision trees over axis-aligned thresholds.
//
// A node with fewer than 2 * min_leaf samples, at max_depth, or without a
// split of positive score becomes a leaf labelled by majority vote (ties go
// to +1). Among equal-scoring splits the lowest feature index wins, then the
// lowest threshold. Thresholds sit at midpoints between consecutive distinct
// values and a sample goes left iff x[feature] <= threshold.

#ifndef NOISETREE_TREE_H_
#define NOISETREE_TREE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noisetree/criteria.h"
#include "noisetree/data.h"
#include "noisetree/noise.h"
#include "noisetree/random.h"

namespace noisetree {

struct TreeParams {
  Criterion criterion = Criterion::kGini;
  size_t min_leaf = 1;
  std::optional<size_t> max_depth;
  // Number of features drawn (without replacement) at every node; all
  // features when unset.
  std::optional<size_t> feature_subset;
  uint64_t seed = 0;

  void Validate(size_t dim) const;
};

struct SplitRule {
  size_t feature = 0;
  double threshold = 0.0;

  friend bool operator==(const SplitRule&, const SplitRule&) = default;
};

struct ScoredSplit {
  SplitRule rule;
  double score = 0.0;
};

// Gains below this are treated as zero by the stopping rule.
inline constexpr double kMinSplitScore = 1e-12;

class DecisionTree {
 public:
  struct Node {
    static constexpr int32_t kLeaf = -1;

    int32_t feature = kLeaf;
    double threshold = 0.0;
    uint32_t left = 0;
    uint32_t right = 0;
    Label label = Label::kPositive;
    uint64_t n_pos = 0;
    uint64_t n_neg = 0;

    bool is_leaf() const { return feature == kLeaf; }
  };

  DecisionTree(size_t dim, std::vector<Node> nodes);

  // Single majority leaf.
  static DecisionTree Leaf(size_t dim, uint64_t n_pos, uint64_t n_neg);

  size_t dim() const { return dim_; }
  // Pre-order; nodes()[0] is the root.
  const std::vector<Node>& nodes() const { return nodes_; }
  size_t leaf_count() const;
  size_t depth() const;

  Label Predict(std::span<const double> x) const;
  // Index of the leaf reached by x.
  size_t LeafIndex(std::span<const double> x) const;

  // One line per node in pre-order: `N <feature> <threshold>` or
  // `L <+1|-1> <n_pos> <n_neg>`.
  void Serialize(std::ostream& out) const;
  std::string ToString() const;
  static DecisionTree Deserialize(std::istream& in, size_t dim);

 private:
  size_t dim_;
  std::vector<Node> nodes_;
};

// Midpoints between consecutive distinct values.
std::vector<double> CandidateSplits(std::span<const double> values);

// Best admissible split of the rows of `ds` listed in `rows` (duplicates
// allowed). Both children must keep >= min_leaf rows; nullopt when nothing
// scores above kMinSplitScore. `rng` is only consulted when
// params.feature_subset restricts the search.
std::optional<ScoredSplit> BestSplit(const Dataset& ds,
                                     std::span<const size_t> rows,
                                     const TreeParams& params,
                                     Rng* rng = nullptr);

DecisionTree FitTree(const Dataset& ds, const TreeParams& params);
DecisionTree FitTree(const NoisyDataset& ds, const TreeParams& params);

// Grows a tree on a row multiset, drawing feature subsets from `rng`.
DecisionTree GrowTree(const Dataset& ds, std::vector<size_t> rows,
                      const TreeParams& params, Rng& rng);

// Same topology, same features, thresholds within `threshold_tol`, same
// leaf labels.
bool TreesEqual(const DecisionTree& a, const DecisionTree& b,
                double threshold_tol);

// Fraction of rows predicted correctly.
double Accuracy(const DecisionTree& tree, const Dataset& ds);

}  // namespace noisetree

#endif  // NOISETREE_TREE_H_
