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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "noisetree/data.h"
#include "noisetree/forest.h"
#include "noisetree/noise.h"
#include "noisetree/random.h"

namespace noisetree {
namespace {

DecisionTree Stump(Label left, Label right) {
  return DecisionTree(1, {{0, 0.0, 1, 2, Label::kPositive, 0, 0},
                          {-1, 0, 0, 0, left, 0, 0},
                          {-1, 0, 0, 0, right, 0, 0}});
}

TEST(ForestModeTest, Names) {
  for (ForestMode m : {ForestMode::kGreedy, ForestMode::kPurelyRandom}) {
    EXPECT_EQ(ParseForestMode(ForestModeName(m)), m);
  }
  EXPECT_THROW(ParseForestMode("bagged"), std::invalid_argument);
}

TEST(VoteTest, Majority) {
  const double x[] = {-1.0};
  RandomForest three(ForestMode::kGreedy,
                     {Stump(Label::kPositive, Label::kNegative),
                      Stump(Label::kPositive, Label::kNegative),
                      Stump(Label::kNegative, Label::kPositive)});
  EXPECT_EQ(three.Predict(x), Label::kPositive);
  RandomForest tie(ForestMode::kGreedy,
                   {Stump(Label::kPositive, Label::kNegative),
                    Stump(Label::kNegative, Label::kPositive)});
  EXPECT_EQ(tie.Predict(x), Label::kPositive);
  RandomForest down(ForestMode::kGreedy,
                    {Stump(Label::kNegative, Label::kNegative),
                     Stump(Label::kNegative, Label::kPositive),
                     Stump(Label::kPositive, Label::kPositive)});
  EXPECT_EQ(down.Predict(x), Label::kNegative);
  EXPECT_THROW(RandomForest(ForestMode::kGreedy, {}), std::invalid_argument);
}

TEST(FitForestTest, SingleFullTreeMatchesFitTree) {
  const Dataset ds = InjectNoise(GenerateCheckerboard(4, 3000, 1),
                                 SymmetricNoise{0.2}, 2)
                         .data;
  ForestParams p;
  p.n_trees = 1;
  p.bootstrap = false;
  p.tree_params.min_leaf = 10;
  p.tree_params.feature_subset = 2;
  const auto forest = FitForest(ds, p);
  EXPECT_EQ(forest.trees()[0].ToString(), FitTree(ds, p.tree_params).ToString());
}

TEST(FitForestTest, ZeroRandomSplitsGiveMajorityLeaves) {
  const Dataset ds = GenerateImbalancedLinear(3, 500, 3);
  ForestParams p;
  p.mode = ForestMode::kPurelyRandom;
  p.n_trees = 5;
  p.k_splits = 0;
  p.bootstrap = false;
  const auto forest = FitForest(ds, p);
  const Label majority = 2 * ds.CountPositive() >= ds.size() ? Label::kPositive
                                                             : Label::kNegative;
  for (const auto& t : forest.trees()) {
    ASSERT_EQ(t.nodes().size(), 1u);
    EXPECT_EQ(t.nodes()[0].label, majority);
  }
}

TEST(FitForestTest, PurelyRandomTreeShape) {
  const Dataset ds = GenerateCheckerboard(2, 400, 4);
  std::vector<size_t> rows(ds.size());
  std::iota(rows.begin(), rows.end(), size_t{0});
  Rng rng(5);
  const auto t = GrowPurelyRandomTree(ds, rows, 25, rng);
  EXPECT_EQ(t.leaf_count(), 26u);
  EXPECT_EQ(t.nodes().size(), 51u);
  Rng small_rng(5);
  const auto exhausted = GrowPurelyRandomTree(ds.Subset(std::vector<size_t>{0, 1, 2}),
                                              std::vector<size_t>{0, 1, 2}, 50,
                                              small_rng);
  EXPECT_EQ(exhausted.leaf_count(), 3u);
}

TEST(FitForestTest, ThreadCountDoesNotChangeModel) {
  const Dataset ds = InjectNoise(GenerateCheckerboard(2, 2000, 6),
                                 SymmetricNoise{0.3}, 7)
                         .data;
  for (ForestMode mode : {ForestMode::kGreedy, ForestMode::kPurelyRandom}) {
    ForestParams p;
    p.mode = mode;
    p.n_trees = 12;
    p.k_splits = 30;
    p.tree_params.min_leaf = 20;
    p.seed = 99;
    p.threads = 1;
    const std::string serial = FitForest(ds, p).ToString();
    p.threads = 4;
    EXPECT_EQ(FitForest(ds, p).ToString(), serial);
    p.seed = 100;
    EXPECT_NE(FitForest(ds, p).ToString(), serial);
  }
}

TEST(FitForestTest, Errors) {
  const Dataset ds = GenerateCheckerboard(2, 50, 1);
  ForestParams p;
  p.n_trees = 0;
  EXPECT_THROW(FitForest(ds, p), std::invalid_argument);
  p.n_trees = 2;
  EXPECT_THROW(FitForest(Dataset(2, {}, {}), p), std::invalid_argument);
}

// Partitions ignore labels, so only the leaf votes see the noise.
TEST(FitForestTest, PurelyRandomForestIgnoresNoiseInPartitions) {
  const Dataset train = GenerateCheckerboard(2, 30000, 11);
  const Dataset test = GenerateCheckerboard(2, 6000, 12);
  ForestParams p;
  p.mode = ForestMode::kPurelyRandom;
  p.n_trees = 100;
  p.k_splits = 1000;
  p.seed = 13;
  const auto clean_forest = FitForest(train, p);
  const double clean = Accuracy(clean_forest, test);
  EXPECT_GE(clean, 0.98);
  for (double eta : {0.2, 0.4}) {
    const auto noisy = InjectNoise(train, SymmetricNoise{eta}, 14);
    const auto forest = FitForest(noisy.data, p);
    for (size_t t = 0; t < p.n_trees; t += 10) {
      const auto& a = clean_forest.trees()[t].nodes();
      const auto& b = forest.trees()[t].nodes();
      ASSERT_EQ(a.size(), b.size());
      for (size_t k = 0; k < a.size(); ++k) {
        ASSERT_EQ(a[k].feature, b[k].feature);
        ASSERT_EQ(a[k].threshold, b[k].threshold);
        ASSERT_EQ(a[k].n_pos + a[k].n_neg, b[k].n_pos + b[k].n_neg);
      }
    }
    EXPECT_NEAR(Accuracy(forest, test), clean, 0.01) << "eta " << eta;
  }
}

TEST(FitForestTest, CellCentreUnderHeavyNoise) {
  const double centre[] = {0.5, 0.5};
  int positive = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const Dataset clean = GenerateCheckerboard(2, 18000, 100 + s);
    const Dataset ds = InjectNoise(clean, SymmetricNoise{0.4}, 200 + s).data;
    ForestParams p;
    p.n_trees = 100;
    p.tree_params.min_leaf = 250;
    p.seed = 300 + s;
    positive += FitForest(ds, p).Predict(centre) == Label::kPositive;
  }
  EXPECT_GE(positive, 19);
}

TEST(SerializationTest, ForestRoundTrip) {
  const Dataset ds = GenerateCheckerboard(2, 1000, 8);
  ForestParams p;
  p.n_trees = 5;
  p.tree_params.min_leaf = 10;
  const auto forest = FitForest(ds, p);
  std::istringstream in(forest.ToString());
  const auto back = RandomForest::Deserialize(in, 2);
  EXPECT_EQ(back.ToString(), forest.ToString());
  EXPECT_EQ(back.mode(), ForestMode::kGreedy);
  EXPECT_EQ(forest.ToString().rfind("FOREST 5 greedy\n", 0), 0u);
  std::istringstream bad("FOREST 0 greedy\n");
  EXPECT_THROW(RandomForest::Deserialize(bad, 2), std::runtime_error);
}

}  // namespace
}  // namespace noisetree
