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

// Experiment harness: noise sweeps, leaf-size sweeps and training-size
// sweeps over trees and forests, scored on clean test data.
//
// Every repeat r draws its data, split, noise and learner randomness from
// streams derived from (seed, r), so the output depends only on the
// configuration and never on thread scheduling.

#ifndef NOISETREE_BENCH_H_
#define NOISETREE_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noisetree/criteria.h"
#include "noisetree/data.h"
#include "noisetree/noise.h"

namespace noisetree {

// Configuration problem; `line` is 0 when not tied to a config file line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// `tree:<criterion>`, `rf[:<criterion>[:<n_trees>]]` or
// `prf:<k_splits>[:<n_trees>]`.
struct LearnerSpec {
  enum class Kind { kTree, kForest, kPurelyRandomForest };

  Kind kind = Kind::kTree;
  Criterion criterion = Criterion::kGini;
  size_t n_trees = 100;
  size_t k_splits = 0;

  static LearnerSpec Parse(std::string_view text);
  std::string Name() const;
};

struct ExperimentConfig {
  // Generator names (cb2, cb4, lin3, lin4) or table paths.
  std::vector<std::string> datasets{"cb2"};
  // Samples per generated dataset; unset uses 30000 for checkerboards and
  // 40000 for the imbalanced-linear sets.
  std::optional<size_t> n;
  TableOptions table;
  std::vector<NoiseModel> noise;
  std::vector<LearnerSpec> learners;
  size_t min_leaf = 250;
  // When set, overrides min_leaf with max(1, floor(fraction * training
  // size)) for every fit.
  std::optional<double> min_leaf_fraction;
  std::optional<size_t> max_depth;
  size_t repeats = 10;
  std::optional<uint64_t> seed;
  SplitSpec split;  // split.seed is ignored; derived per repeat
  // Score on the clean training split instead of the test split.
  bool test_on_train = false;
  // Clean test-set size for training-size sweeps.
  size_t test_size = 4000;
  std::vector<size_t> leaf_sizes;
  std::vector<size_t> sizes;
  size_t threads = 1;
  std::string output;
  std::string runs_output;

  // Throws ConfigError.
  void Validate() const;
};

// Names of every recognised configuration key.
const std::vector<std::string>& ConfigKeys();

// Applies one `key = value` setting; throws ConfigError naming `line`.
void ApplySetting(ExperimentConfig& cfg, const std::string& key,
                  const std::string& value, size_t line = 0);

// Reads `key = value` lines (`#` starts a comment) into an ordered map of
// key -> (value, line).
std::map<std::string, std::pair<std::string, size_t>> ReadSettings(
    std::istream& in);

ExperimentConfig DefaultConfig();
ExperimentConfig ParseConfig(std::istream& in);

struct ResultRow {
  std::string dataset;
  std::string learner;
  std::string noise;
  double mean = 0.0;  // accuracy in percent
  double std = 0.0;   // sample standard deviation, repeats - 1 denominator
  size_t repeats = 0;
  std::vector<double> runs;  // per-repeat accuracy in percent
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

// Mean and sample standard deviation of `runs`.
void Aggregate(ResultRow& row);

ResultTable RunNoiseSweep(const ExperimentConfig& cfg);
// One noise sweep per cfg.leaf_sizes entry (min_leaf overridden); learner
// names get a `/leaf=<size>` suffix.
ResultTable RunLeafSizeSweep(const ExperimentConfig& cfg);
// Per cfg.sizes entry: train on `size` generated samples, score on
// cfg.test_size fresh clean samples; learner names get `/n=<size>`.
ResultTable RunTrainingSizeSweep(const ExperimentConfig& cfg);

// CSV `dataset,learner,noise,mean,std,repeats`, mean/std with 2 decimals.
void WriteTable(const ResultTable& table, std::ostream& out);
void EmitTable(const ResultTable& table, const std::string& path);
ResultTable ReadResultTable(std::istream& in);

// Per-run log `dataset,learner,noise,repeat,accuracy` at full precision.
void WriteRuns(const ResultTable& table, std::ostream& out);
void EmitRuns(const ResultTable& table, const std::string& path);
// Groups a per-run log back into aggregated rows (in first-seen order).
ResultTable ReadRuns(std::istream& in);

// Splits a CSV line honouring double quotes.
std::vector<std::string> SplitCsvLine(const std::string& line);

}  // namespace noisetree

#endif  // NOISETREE_BENCH_H_
