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

#ifndef NOISETREE_FOREST_H_
#define NOISETREE_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noisetree/data.h"
#include "noisetree/tree.h"

namespace noisetree {

enum class ForestMode {
  // Bagged trees grown greedily on a random feature subset per node.
  kGreedy,
  // Label-blind partitions: random node, random feature, uniform threshold.
  kPurelyRandom,
};

std::string ForestModeName(ForestMode mode);
ForestMode ParseForestMode(std::string_view name);

struct ForestParams {
  size_t n_trees = 100;
  TreeParams tree_params;
  bool bootstrap = true;
  ForestMode mode = ForestMode::kGreedy;
  // Successful random splits per tree in kPurelyRandom mode.
  size_t k_splits = 0;
  uint64_t seed = 0;
  // Worker threads for fitting. Does not affect the fitted model.
  size_t threads = 1;
};

class RandomForest {
 public:
  RandomForest(ForestMode mode, std::vector<DecisionTree> trees);

  ForestMode mode() const { return mode_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }
  size_t dim() const { return trees_.front().dim(); }

  // Majority vote; an even split goes to +1.
  Label Predict(std::span<const double> x) const;

  // `FOREST <n_trees> <mode>` followed by each tree's serialization.
  void Serialize(std::ostream& out) const;
  std::string ToString() const;
  static RandomForest Deserialize(std::istream& in, size_t dim);

 private:
  ForestMode mode_;
  std::vector<DecisionTree> trees_;
};

// Tree i draws all of its randomness (bootstrap, feature subsets, random
// splits) from a stream keyed by (seed, i), so the result is identical for
// any thread count. In kGreedy mode an unset feature_subset defaults to
// ceil(sqrt(d)).
RandomForest FitForest(const Dataset& ds, const ForestParams& params);

// One label-blind random tree over the given rows.
DecisionTree GrowPurelyRandomTree(const Dataset& ds,
                                  std::span<const size_t> rows,
                                  size_t k_splits, Rng& rng);

double Accuracy(const RandomForest& forest, const Dataset& ds);

}  // namespace noisetree

#endif  // NOISETREE_FOREST_H_
