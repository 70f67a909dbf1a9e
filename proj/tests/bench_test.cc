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
#include <sstream>
#include <string>

#include "noisetree/bench.h"

namespace noisetree {
namespace {

ExperimentConfig Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseConfig(in);
}

ExperimentConfig Small() {
  return Parse(
      "dataset = cb2\n"
      "n = 600\n"
      "noise = sym:0; sym:0.3\n"
      "learners = tree:gini, rf:gini:5\n"
      "min_leaf = 10\n"
      "repeats = 3\n"
      "seed = 4\n");
}

TEST(LearnerSpecTest, ParseAndName) {
  EXPECT_EQ(LearnerSpec::Parse("tree:entropy").Name(), "tree:entropy");
  EXPECT_EQ(LearnerSpec::Parse("rf").Name(), "rf:gini:100");
  EXPECT_EQ(LearnerSpec::Parse("rf:twoing:7").Name(), "rf:twoing:7");
  const auto prf = LearnerSpec::Parse("prf:40:9");
  EXPECT_EQ(prf.kind, LearnerSpec::Kind::kPurelyRandomForest);
  EXPECT_EQ(prf.k_splits, 40u);
  EXPECT_EQ(prf.n_trees, 9u);
  for (const char* bad : {"svm", "tree", "tree:foo", "rf:gini:0", "prf"}) {
    EXPECT_THROW(LearnerSpec::Parse(bad), ConfigError) << bad;
  }
}

TEST(ConfigTest, Defaults) {
  const auto cfg = DefaultConfig();
  EXPECT_EQ(cfg.noise.size(), 6u);
  EXPECT_EQ(cfg.learners.size(), 2u);
  EXPECT_EQ(cfg.min_leaf, 250u);
  EXPECT_EQ(cfg.repeats, 10u);
  EXPECT_FALSE(cfg.seed.has_value());
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

TEST(ConfigTest, ParsesEveryKey) {
  const auto cfg = Parse(
      "# comment\n"
      "dataset = cb4, lin3\n"
      "n = 1000   # trailing\n"
      "delimiter = tab\n"
      "header = true\n"
      "label_column = 0\n"
      "noise = sym:0.1; cc:0.3,0.1\n"
      "learners = tree:mc, prf:10:3\n"
      "min_leaf = 5\n"
      "min_leaf_fraction = 0.05\n"
      "max_depth = 4\n"
      "repeats = 2\n"
      "seed = 11\n"
      "train_fraction = 0.5\n"
      "validation_fraction = 0.25\n"
      "test_fraction = 0.25\n"
      "test_on_train = false\n"
      "test_size = 50\n"
      "leaf_sizes = 1, 2\n"
      "sizes = 10,20\n"
      "threads = 3\n"
      "output = out.csv\n"
      "runs_output = runs.csv\n");
  EXPECT_EQ(cfg.datasets, (std::vector<std::string>{"cb4", "lin3"}));
  EXPECT_EQ(cfg.n, 1000u);
  EXPECT_EQ(cfg.table.delimiter, '\t');
  EXPECT_TRUE(cfg.table.header);
  EXPECT_EQ(cfg.table.label_column, 0);
  EXPECT_EQ(cfg.noise.size(), 2u);
  EXPECT_EQ(cfg.learners[1].Name(), "prf:10:3");
  EXPECT_EQ(cfg.min_leaf_fraction, 0.05);
  EXPECT_EQ(cfg.max_depth, 4u);
  EXPECT_EQ(cfg.seed, 11u);
  EXPECT_DOUBLE_EQ(cfg.split.train_fraction, 0.5);
  EXPECT_EQ(cfg.leaf_sizes, (std::vector<size_t>{1, 2}));
  EXPECT_EQ(cfg.sizes, (std::vector<size_t>{10, 20}));
  EXPECT_EQ(cfg.threads, 3u);
  EXPECT_EQ(cfg.output, "out.csv");
  EXPECT_EQ(cfg.runs_output, "runs.csv");
  EXPECT_NO_THROW(cfg.Validate());
}

TEST(ConfigTest, ErrorsCarryLineNumbers) {
  const std::pair<const char*, size_t> cases[] = {
      {"seed = 1\nbogus = 3\n", 2},
      {"seed = 1\n\nlearners = svm\n", 3},
      {"min_leaf = -4\n", 1},
      {"seed = 1\nno equals sign\n", 2},
      {"seed = 1\nnoise = sym:1.5\n", 2},
  };
  for (const auto& [text, line] : cases) {
    try {
      Parse(text);
      ADD_FAILURE() << "no error for: " << text;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.line(), line) << text;
      EXPECT_NE(std::string(e.what()).find("line " + std::to_string(line)),
                std::string::npos);
    }
  }
}

TEST(ConfigTest, ValidateRejects) {
  const auto base = Small();
  auto cfg = base;
  cfg.split.test_fraction = 0.5;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = base;
  cfg.min_leaf_fraction = 0.7;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = base;
  cfg.datasets = {"/no/such/file.csv"};
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = base;
  cfg.repeats = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

TEST(AggregateTest, SampleStd) {
  ResultRow row;
  row.runs = {90, 92, 94};
  Aggregate(row);
  EXPECT_DOUBLE_EQ(row.mean, 92);
  EXPECT_DOUBLE_EQ(row.std, 2);
  EXPECT_EQ(row.repeats, 3u);
  row.runs = {80};
  Aggregate(row);
  EXPECT_DOUBLE_EQ(row.std, 0);
}

TEST(NoiseSweepTest, MemorizesCleanTrainingSet) {
  auto cfg = Parse(
      "dataset = cb2\nn = 500\nnoise = sym:0\nlearners = tree:gini\n"
      "min_leaf = 1\nrepeats = 1\nseed = 2\ntest_on_train = true\n");
  const auto table = RunNoiseSweep(cfg);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(table.rows[0].mean, 100.0);
}

TEST(NoiseSweepTest, TableShape) {
  auto cfg = DefaultConfig();
  cfg.datasets = {"cb2", "cb4", "lin3", "lin4"};
  cfg.n = 200;
  cfg.learners = {LearnerSpec::Parse("tree:gini"), LearnerSpec::Parse("rf:gini:3")};
  cfg.min_leaf = 5;
  cfg.repeats = 2;
  cfg.seed = 1;
  const auto table = RunNoiseSweep(cfg);
  ASSERT_EQ(table.rows.size(), 48u);
  EXPECT_EQ(table.rows[0].dataset, "cb2");
  EXPECT_EQ(table.rows[0].learner, "tree:gini");
  EXPECT_EQ(table.rows[0].noise, "sym:0");
  for (const auto& row : table.rows) {
    EXPECT_EQ(row.repeats, 2u);
    EXPECT_GE(row.mean, 0.0);
    EXPECT_LE(row.mean, 100.0);
  }
}

TEST(NoiseSweepTest, DeterministicAcrossThreads) {
  auto cfg = Small();
  std::ostringstream a, b, ra, rb;
  const auto t1 = RunNoiseSweep(cfg);
  WriteTable(t1, a);
  WriteRuns(t1, ra);
  cfg.threads = 3;
  const auto t2 = RunNoiseSweep(cfg);
  WriteTable(t2, b);
  WriteRuns(t2, rb);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(ra.str(), rb.str());
  cfg.seed = 5;
  std::ostringstream c;
  WriteTable(RunNoiseSweep(cfg), c);
  EXPECT_NE(a.str(), c.str());
}

TEST(NoiseSweepTest, AggregatesRecomputeFromRuns) {
  const auto table = RunNoiseSweep(Small());
  std::ostringstream runs;
  WriteRuns(table, runs);
  std::istringstream in(runs.str());
  const auto back = ReadRuns(in);
  ASSERT_EQ(back.rows.size(), table.rows.size());
  for (size_t i = 0; i < back.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].learner, table.rows[i].learner);
    EXPECT_EQ(back.rows[i].runs, table.rows[i].runs);
    EXPECT_DOUBLE_EQ(back.rows[i].mean, table.rows[i].mean);
    EXPECT_DOUBLE_EQ(back.rows[i].std, table.rows[i].std);
  }
}

TEST(LeafSweepTest, MatchesNoiseSweepAtSameLeafSize) {
  auto cfg = Small();
  cfg.learners = {LearnerSpec::Parse("tree:gini")};
  cfg.min_leaf = 25;
  cfg.leaf_sizes = {1, 25};
  const auto leaf = RunLeafSizeSweep(cfg);
  const auto plain = RunNoiseSweep(cfg);
  ASSERT_EQ(leaf.rows.size(), 4u);
  ASSERT_EQ(plain.rows.size(), 2u);
  EXPECT_EQ(leaf.rows[2].learner, "tree:gini/leaf=25");
  for (size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(leaf.rows[2 + k].runs, plain.rows[k].runs);
  }
  cfg.leaf_sizes.clear();
  EXPECT_THROW(RunLeafSizeSweep(cfg), ConfigError);
}

TEST(SizeSweepTest, SmallCleanSample) {
  auto cfg = Small();
  cfg.learners = {LearnerSpec::Parse("tree:gini")};
  cfg.noise = {SymmetricNoise{0.0}};
  cfg.min_leaf = 1;
  cfg.sizes = {100, 1000};
  cfg.test_size = 2000;
  const auto table = RunTrainingSizeSweep(cfg);
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.rows[0].learner, "tree:gini/n=100");
  EXPECT_GE(table.rows[0].mean, 90.0);
  EXPECT_GE(table.rows[1].mean, table.rows[0].mean - 1.0);
}

TEST(SizeSweepTest, MinLeafFraction) {
  auto cfg = Small();
  cfg.learners = {LearnerSpec::Parse("tree:gini")};
  cfg.noise = {SymmetricNoise{0.0}};
  cfg.min_leaf = 1;
  cfg.sizes = {200};
  cfg.test_size = 500;
  cfg.min_leaf_fraction = 0.5;  // min_leaf 100: at most a single split
  const auto coarse = RunTrainingSizeSweep(cfg);
  cfg.min_leaf_fraction.reset();
  const auto fine = RunTrainingSizeSweep(cfg);
  EXPECT_LT(coarse.rows[0].mean, fine.rows[0].mean);
}

TEST(CsvTest, EmptyTableIsHeaderOnly) {
  std::ostringstream out;
  WriteTable(ResultTable{}, out);
  EXPECT_EQ(out.str(), "dataset,learner,noise,mean,std,repeats\n");
}

TEST(CsvTest, RoundTrip) {
  ResultTable table;
  ResultRow row;
  row.dataset = "data,with comma.csv";
  row.learner = "rf:gini:100";
  row.noise = "cc:0.4,0.2";
  row.runs = {97.5, 98.25};
  Aggregate(row);
  table.rows.push_back(row);
  std::ostringstream out;
  WriteTable(table, out);
  EXPECT_EQ(out.str(),
            "dataset,learner,noise,mean,std,repeats\n"
            "\"data,with comma.csv\",rf:gini:100,\"cc:0.4,0.2\",97.88,0.53,2\n");
  std::istringstream in(out.str());
  const auto back = ReadResultTable(in);
  ASSERT_EQ(back.rows.size(), 1u);
  EXPECT_EQ(back.rows[0].dataset, row.dataset);
  EXPECT_EQ(back.rows[0].noise, row.noise);
  EXPECT_DOUBLE_EQ(back.rows[0].mean, 97.88);
  EXPECT_EQ(back.rows[0].repeats, 2u);
}

TEST(CsvTest, SplitLine) {
  EXPECT_EQ(SplitCsvLine("a,\"b,c\",\"d\"\"e\","),
            (std::vector<std::string>{"a", "b,c", "d\"e", ""}));
}

}  // namespace
}  // namespace noisetree
