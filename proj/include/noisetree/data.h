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

// Binary-labelled datasets: synthetic generators, delimited-text ingestion
// and serialization, and seeded train/validation/test partitioning.

#ifndef NOISETREE_DATA_H_
#define NOISETREE_DATA_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace noisetree {

enum class Label : int8_t { kNegative = -1, kPositive = 1 };

inline Label Flip(Label y) {
  return y == Label::kPositive ? Label::kNegative : Label::kPositive;
}
inline int ToInt(Label y) { return static_cast<int>(y); }

// Dense row-major feature matrix with one +1/-1 label per row. Immutable
// after construction; the constructor enforces every invariant (shape,
// finiteness).
class Dataset {
 public:
  Dataset(size_t dim, std::vector<double> features, std::vector<Label> labels);

  size_t size() const { return labels_.size(); }
  size_t dim() const { return dim_; }
  bool empty() const { return labels_.empty(); }

  std::span<const double> row(size_t i) const {
    return {features_.data() + i * dim_, dim_};
  }
  double feature(size_t i, size_t j) const { return features_[i * dim_ + j]; }
  Label label(size_t i) const { return labels_[i]; }

  const std::vector<double>& features() const { return features_; }
  const std::vector<Label>& labels() const { return labels_; }

  size_t CountPositive() const;

  // Same features, replaced labels.
  Dataset WithLabels(std::vector<Label> labels) const;
  // Rows in the given order (duplicates allowed).
  Dataset Subset(std::span<const size_t> rows) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  size_t dim_;
  std::vector<double> features_;
  std::vector<Label> labels_;
};

// Ground-truth checkerboard labelling: +1 iff floor(x1)+floor(x2) is even,
// a coordinate equal to `grid` falls in the last cell.
Label CheckerboardLabel(int grid, double x1, double x2);

// n points uniform on [0, grid]^2 labelled by CheckerboardLabel.
// grid must be 2 or 4.
Dataset GenerateCheckerboard(int grid, size_t n, uint64_t seed);

// Imbalanced two-class uniform data.
//  variant 3: +1 ~ U([0,.5]x[0,1]) prior .9,  -1 ~ U([.5,1]x[0,1]) prior .1
//  variant 4: +1 ~ U([0,.5]x[0,1]) prior .8,  -1 ~ U([.5,.7]x[.4,.6]) prior .2
// Class is drawn per sample from the prior.
Dataset GenerateImbalancedLinear(int variant, size_t n, uint64_t seed);

// Named generator used by the CLI and experiment configs:
// "cb2", "cb4", "lin3", "lin4".
Dataset GenerateByName(const std::string& name, size_t n, uint64_t seed);
bool IsGeneratorName(const std::string& name);

struct TableOptions {
  char delimiter = ',';
  bool header = false;
  // Column holding the label; negative counts from the end (-1 = last).
  int label_column = -1;
};

// Reads a delimited table. The label column must hold exactly two distinct
// raw values; the larger one maps to +1. Values are compared numerically
// when both parse as numbers, otherwise lexicographically. Throws
// std::runtime_error naming the row and column on malformed input.
Dataset LoadTable(const std::string& path, const TableOptions& options = {});
Dataset ReadTable(std::istream& in, const TableOptions& options = {});

// Writes `f0,...,f{d-1},label` followed by one row per sample; features use
// the shortest round-trip decimal form, labels are `+1`/`-1`.
void WriteTable(const Dataset& ds, std::ostream& out);
void SaveTable(const Dataset& ds, const std::string& path);

struct SplitSpec {
  double train_fraction = 0.6;
  double validation_fraction = 0.2;
  double test_fraction = 0.2;
  uint64_t seed = 0;
};

struct SplitIndices {
  std::vector<size_t> train;
  std::vector<size_t> validation;
  std::vector<size_t> test;
};

struct DatasetSplit {
  Dataset train;
  Dataset validation;
  Dataset test;
};

// Fractions in [0, 1] summing to 1.
void ValidateSplitFractions(const SplitSpec& spec);

// Seeded shuffle, then validation and test take floor(fraction * n) rows
// each and train takes the rest.
SplitIndices ComputeSplit(size_t n, const SplitSpec& spec);
DatasetSplit SplitDataset(const Dataset& ds, const SplitSpec& spec);

// Shortest decimal string that parses back to exactly `value`.
std::string FormatDouble(double value);
// Strict parse of a finite double; throws std::invalid_argument.
double ParseDouble(std::string_view text);

}  // namespace noisetree

#endif  // NOISETREE_DATA_H_
