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

#include "noisetree/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "noisetree/random.h"

namespace noisetree {

Dataset::Dataset(size_t dim, std::vector<double> features,
                 std::vector<Label> labels)
    : dim_(dim), features_(std::move(features)), labels_(std::move(labels)) {
  if (dim_ == 0) throw std::invalid_argument("dataset dimension must be >= 1");
  if (features_.size() != labels_.size() * dim_) {
    throw std::invalid_argument("feature matrix has " +
                                std::to_string(features_.size()) +
                                " values, expected " +
                                std::to_string(labels_.size() * dim_));
  }
  for (size_t k = 0; k < features_.size(); ++k) {
    if (!std::isfinite(features_[k])) {
      throw std::invalid_argument("non-finite feature at row " +
                                  std::to_string(k / dim_) + ", column " +
                                  std::to_string(k % dim_));
    }
  }
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != Label::kPositive && labels_[i] != Label::kNegative) {
      throw std::invalid_argument("label at row " + std::to_string(i) +
                                  " is not +1/-1");
    }
  }
}

size_t Dataset::CountPositive() const {
  return static_cast<size_t>(
      std::count(labels_.begin(), labels_.end(), Label::kPositive));
}

Dataset Dataset::WithLabels(std::vector<Label> labels) const {
  return Dataset(dim_, features_, std::move(labels));
}

Dataset Dataset::Subset(std::span<const size_t> rows) const {
  std::vector<double> features;
  std::vector<Label> labels;
  features.reserve(rows.size() * dim_);
  labels.reserve(rows.size());
  for (size_t r : rows) {
    if (r >= size()) throw std::out_of_range("subset row out of range");
    auto x = row(r);
    features.insert(features.end(), x.begin(), x.end());
    labels.push_back(labels_[r]);
  }
  return Dataset(dim_, std::move(features), std::move(labels));
}

Label CheckerboardLabel(int grid, double x1, double x2) {
  auto cell = [grid](double v) {
    auto c = static_cast<long>(std::floor(v));
    return std::clamp<long>(c, 0, grid - 1);
  };
  return (cell(x1) + cell(x2)) % 2 == 0 ? Label::kPositive : Label::kNegative;
}

Dataset GenerateCheckerboard(int grid, size_t n, uint64_t seed) {
  if (grid != 2 && grid != 4) {
    throw std::invalid_argument("checkerboard grid must be 2 or 4, got " +
                                std::to_string(grid));
  }
  if (n == 0) throw std::invalid_argument("checkerboard needs n >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> coord(0.0, static_cast<double>(grid));
  std::vector<double> features(2 * n);
  std::vector<Label> labels(n);
  for (size_t i = 0; i < n; ++i) {
    double x1 = coord(rng);
    double x2 = coord(rng);
    features[2 * i] = x1;
    features[2 * i + 1] = x2;
    labels[i] = CheckerboardLabel(grid, x1, x2);
  }
  return Dataset(2, std::move(features), std::move(labels));
}

Dataset GenerateImbalancedLinear(int variant, size_t n, uint64_t seed) {
  struct Box {
    double x_lo, x_hi, y_lo, y_hi;
  };
  const Box positive{0.0, 0.5, 0.0, 1.0};
  Box negative;
  double prior;
  switch (variant) {
    case 3:
      negative = {0.5, 1.0, 0.0, 1.0};
      prior = 0.9;
      break;
    case 4:
      negative = {0.5, 0.7, 0.4, 0.6};
      prior = 0.8;
      break;
    default:
      throw std::invalid_argument("imbalanced-linear variant must be 3 or 4");
  }
  if (n == 0) throw std::invalid_argument("imbalanced-linear needs n >= 1");

  Rng rng(seed);
  std::bernoulli_distribution is_positive(prior);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> features(2 * n);
  std::vector<Label> labels(n);
  for (size_t i = 0; i < n; ++i) {
    const bool pos = is_positive(rng);
    const Box& box = pos ? positive : negative;
    features[2 * i] = box.x_lo + (box.x_hi - box.x_lo) * unit(rng);
    features[2 * i + 1] = box.y_lo + (box.y_hi - box.y_lo) * unit(rng);
    labels[i] = pos ? Label::kPositive : Label::kNegative;
  }
  return Dataset(2, std::move(features), std::move(labels));
}

bool IsGeneratorName(const std::string& name) {
  return name == "cb2" || name == "cb4" || name == "lin3" || name == "lin4";
}

Dataset GenerateByName(const std::string& name, size_t n, uint64_t seed) {
  if (name == "cb2") return GenerateCheckerboard(2, n, seed);
  if (name == "cb4") return GenerateCheckerboard(4, n, seed);
  if (name == "lin3") return GenerateImbalancedLinear(3, n, seed);
  if (name == "lin4") return GenerateImbalancedLinear(4, n, seed);
  throw std::invalid_argument("unknown generator '" + name +
                              "' (expected cb2, cb4, lin3, lin4)");
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, end);
}

double ParseDouble(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw std::invalid_argument("not a finite number: '" + std::string(text) +
                                "'");
  }
  return value;
}

namespace {

std::vector<std::string_view> SplitLine(std::string_view line, char delim) {
  std::vector<std::string_view> cells;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// True when `a` should map to +1 relative to `b`.
bool RawLabelGreater(const std::string& a, const std::string& b) {
  std::optional<double> na, nb;
  try {
    na = ParseDouble(a);
    nb = ParseDouble(b);
  } catch (const std::invalid_argument&) {
    na.reset();
  }
  if (na && nb) return *na > *nb;
  return a > b;
}

}  // namespace

Dataset ReadTable(std::istream& in, const TableOptions& options) {
  std::string line;
  size_t line_no = 0;
  size_t columns = 0;
  size_t label_col = 0;
  std::vector<double> features;
  std::vector<std::string> raw_labels;
  bool header_pending = options.header;

  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto cells = SplitLine(line, options.delimiter);
    if (columns == 0) {
      columns = cells.size();
      if (columns < 2) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": need at least one feature and a label");
      }
      long lc = options.label_column < 0
                    ? static_cast<long>(columns) + options.label_column
                    : options.label_column;
      if (lc < 0 || lc >= static_cast<long>(columns)) {
        throw std::runtime_error("label column " +
                                 std::to_string(options.label_column) +
                                 " out of range for " +
                                 std::to_string(columns) + " columns");
      }
      label_col = static_cast<size_t>(lc);
    }
    if (cells.size() != columns) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                               std::to_string(cells.size()) +
                               " columns, expected " + std::to_string(columns));
    }
    if (header_pending) {
      header_pending = false;
      continue;
    }
    for (size_t c = 0; c < columns; ++c) {
      if (c == label_col) {
        raw_labels.push_back(Trim(cells[c]));
        continue;
      }
      try {
        features.push_back(ParseDouble(cells[c]));
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ", column " + std::to_string(c + 1) + ": " +
                                 e.what());
      }
    }
  }
  if (raw_labels.empty()) throw std::runtime_error("table has no data rows");

  std::vector<std::string> alphabet = raw_labels;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()),
                 alphabet.end());
  if (alphabet.size() > 2) {
    throw std::runtime_error("label column has " +
                             std::to_string(alphabet.size()) +
                             " distinct values, expected at most 2");
  }
  std::string positive = alphabet.front();
  if (alphabet.size() == 2 && RawLabelGreater(alphabet[1], alphabet[0])) {
    positive = alphabet[1];
  }
  std::vector<Label> labels;
  labels.reserve(raw_labels.size());
  for (const auto& raw : raw_labels) {
    labels.push_back(raw == positive ? Label::kPositive : Label::kNegative);
  }
  return Dataset(columns - 1, std::move(features), std::move(labels));
}

Dataset LoadTable(const std::string& path, const TableOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return ReadTable(in, options);
}

void WriteTable(const Dataset& ds, std::ostream& out) {
  for (size_t j = 0; j < ds.dim(); ++j) out << 'f' << j << ',';
  out << "label\n";
  for (size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.row(i)) out << FormatDouble(v) << ',';
    out << (ds.label(i) == Label::kPositive ? "+1" : "-1") << '\n';
  }
}

void SaveTable(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  WriteTable(ds, out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void ValidateSplitFractions(const SplitSpec& spec) {
  const double fractions[] = {spec.train_fraction, spec.validation_fraction,
                              spec.test_fraction};
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw std::invalid_argument("split fractions must lie in [0, 1]");
    }
  }
  if (std::abs(spec.train_fraction + spec.validation_fraction +
               spec.test_fraction - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must sum to 1");
  }
}

SplitIndices ComputeSplit(size_t n, const SplitSpec& spec) {
  ValidateSplitFractions(spec);
  if (n < 3) throw std::invalid_argument("split needs at least 3 samples");

  auto take = [n](double f) {
    return static_cast<size_t>(std::floor(f * static_cast<double>(n) + 1e-9));
  };
  const size_t n_val = take(spec.validation_fraction);
  const size_t n_test = take(spec.test_fraction);
  if (spec.test_fraction > 0.0 && n_test == 0) {
    throw std::invalid_argument("test fraction yields an empty test set");
  }

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(spec.seed);
  std::shuffle(order.begin(), order.end(), rng);

  SplitIndices out;
  const size_t n_train = n - n_val - n_test;
  out.train.assign(order.begin(), order.begin() + n_train);
  out.validation.assign(order.begin() + n_train,
                        order.begin() + n_train + n_val);
  out.test.assign(order.begin() + n_train + n_val, order.end());
  return out;
}

DatasetSplit SplitDataset(const Dataset& ds, const SplitSpec& spec) {
  SplitIndices idx = ComputeSplit(ds.size(), spec);
  return {ds.Subset(idx.train), ds.Subset(idx.validation),
          ds.Subset(idx.test)};
}

}  // namespace noisetree
