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

#include "noisetree/bench.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "noisetree/forest.h"
#include "noisetree/random.h"
#include "noisetree/tree.h"

namespace noisetree {

// ---------------------------------------------------------------------------
// Learners

LearnerSpec LearnerSpec::Parse(std::string_view text) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t colon = text.find(':', start);
    parts.emplace_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  auto to_size = [&](const std::string& s) {
    size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError("bad number '" + s + "' in learner '" +
                        std::string(text) + "'");
    }
    return v;
  };
  LearnerSpec spec;
  try {
    if (parts[0] == "tree" && parts.size() == 2) {
      spec.kind = Kind::kTree;
      spec.criterion = ParseCriterion(parts[1]);
      return spec;
    }
    if (parts[0] == "rf" && parts.size() <= 3) {
      spec.kind = Kind::kForest;
      if (parts.size() >= 2) spec.criterion = ParseCriterion(parts[1]);
      if (parts.size() == 3) spec.n_trees = to_size(parts[2]);
      if (spec.n_trees == 0) throw ConfigError("forest needs >= 1 tree");
      return spec;
    }
    if (parts[0] == "prf" && (parts.size() == 2 || parts.size() == 3)) {
      spec.kind = Kind::kPurelyRandomForest;
      spec.k_splits = to_size(parts[1]);
      if (parts.size() == 3) spec.n_trees = to_size(parts[2]);
      if (spec.n_trees == 0) throw ConfigError("forest needs >= 1 tree");
      return spec;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown learner '" + std::string(text) +
                    "' (expected tree:<criterion>, rf[:<criterion>[:<trees>]]"
                    " or prf:<k_splits>[:<trees>])");
}

std::string LearnerSpec::Name() const {
  switch (kind) {
    case Kind::kTree:
      return "tree:" + CriterionName(criterion);
    case Kind::kForest:
      return "rf:" + CriterionName(criterion) + ":" + std::to_string(n_trees);
    case Kind::kPurelyRandomForest:
      return "prf:" + std::to_string(k_splits) + ":" + std::to_string(n_trees);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::Validate() const {
  if (datasets.empty()) throw ConfigError("no dataset configured");
  for (const auto& d : datasets) {
    if (!IsGeneratorName(d) && !std::filesystem::exists(d)) {
      throw ConfigError("dataset '" + d +
                        "' is neither a generator name nor an existing file");
    }
  }
  if (n && *n < 3) throw ConfigError("n must be >= 3");
  if (noise.empty()) throw ConfigError("no noise model configured");
  for (const auto& m : noise) {
    try {
      ValidateNoiseModel(m);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (learners.empty()) throw ConfigError("no learner configured");
  if (min_leaf < 1) throw ConfigError("min_leaf must be >= 1");
  if (min_leaf_fraction &&
      !(*min_leaf_fraction > 0.0 && *min_leaf_fraction <= 0.5)) {
    throw ConfigError("min_leaf_fraction must be in (0, 0.5]");
  }
  if (max_depth && *max_depth < 1) throw ConfigError("max_depth must be >= 1");
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  if (!seed) throw ConfigError("seed is required");
  if (test_size < 1) throw ConfigError("test_size must be >= 1");
  try {
    ValidateSplitFractions(split);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "dataset",         "n",
      "delimiter",       "header",
      "label_column",    "noise",
      "learners",        "min_leaf",
      "min_leaf_fraction",
      "max_depth",       "repeats",
      "seed",            "train_fraction",
      "validation_fraction", "test_fraction",
      "test_on_train",   "test_size",
      "leaf_sizes",      "sizes",
      "threads",         "output",
      "runs_output",
  };
  return keys;
}

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitList(const std::string& value, char sep) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

uint64_t ParseUnsigned(const std::string& key, const std::string& value,
                       size_t line) {
  uint64_t v = 0;
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() ||
      ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" +
                          value + "'",
                      line);
  }
  return v;
}

bool ParseBool(const std::string& key, const std::string& value, size_t line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key + ": expected true/false, got '" + value + "'", line);
}

double ParseFraction(const std::string& key, const std::string& value,
                     size_t line) {
  try {
    return ParseDouble(value);
  } catch (const std::invalid_argument&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'", line);
  }
}

}  // namespace

void ApplySetting(ExperimentConfig& cfg, const std::string& key,
                  const std::string& raw, size_t line) {
  const std::string value = Trim(raw);
  if (key == "dataset") {
    cfg.datasets = SplitList(value, ',');
  } else if (key == "n") {
    cfg.n = ParseUnsigned(key, value, line);
  } else if (key == "delimiter") {
    if (value == "tab" || value == "\\t") {
      cfg.table.delimiter = '\t';
    } else if (value.size() == 1) {
      cfg.table.delimiter = value[0];
    } else {
      throw ConfigError("delimiter must be a single character or 'tab'", line);
    }
  } else if (key == "header") {
    cfg.table.header = ParseBool(key, value, line);
  } else if (key == "label_column") {
    try {
      cfg.table.label_column = std::stoi(value);
    } catch (const std::exception&) {
      throw ConfigError("label_column: expected an integer", line);
    }
  } else if (key == "noise") {
    cfg.noise.clear();
    for (const auto& item : SplitList(value, ';')) {
      try {
        cfg.noise.push_back(ParseNoiseModel(item));
        ValidateNoiseModel(cfg.noise.back());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), line);
      }
    }
  } else if (key == "learners") {
    cfg.learners.clear();
    for (const auto& item : SplitList(value, ',')) {
      try {
        cfg.learners.push_back(LearnerSpec::Parse(item));
      } catch (const ConfigError& e) {
        throw ConfigError(e.what(), line);
      }
    }
  } else if (key == "min_leaf") {
    cfg.min_leaf = ParseUnsigned(key, value, line);
  } else if (key == "min_leaf_fraction") {
    if (value == "none" || value.empty()) {
      cfg.min_leaf_fraction.reset();
    } else {
      cfg.min_leaf_fraction = ParseFraction(key, value, line);
    }
  } else if (key == "max_depth") {
    if (value == "none" || value.empty()) {
      cfg.max_depth.reset();
    } else {
      cfg.max_depth = ParseUnsigned(key, value, line);
    }
  } else if (key == "repeats") {
    cfg.repeats = ParseUnsigned(key, value, line);
  } else if (key == "seed") {
    cfg.seed = ParseUnsigned(key, value, line);
  } else if (key == "train_fraction") {
    cfg.split.train_fraction = ParseFraction(key, value, line);
  } else if (key == "validation_fraction") {
    cfg.split.validation_fraction = ParseFraction(key, value, line);
  } else if (key == "test_fraction") {
    cfg.split.test_fraction = ParseFraction(key, value, line);
  } else if (key == "test_on_train") {
    cfg.test_on_train = ParseBool(key, value, line);
  } else if (key == "test_size") {
    cfg.test_size = ParseUnsigned(key, value, line);
  } else if (key == "leaf_sizes" || key == "sizes") {
    std::vector<size_t> list;
    for (const auto& item : SplitList(value, ',')) {
      list.push_back(ParseUnsigned(key, item, line));
    }
    (key == "sizes" ? cfg.sizes : cfg.leaf_sizes) = std::move(list);
  } else if (key == "threads") {
    cfg.threads = ParseUnsigned(key, value, line);
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "runs_output") {
    cfg.runs_output = value;
  } else {
    throw ConfigError("unknown key '" + key + "'", line);
  }
}

std::map<std::string, std::pair<std::string, size_t>> ReadSettings(
    std::istream& in) {
  std::map<std::string, std::pair<std::string, size_t>> settings;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value'", line_no);
    }
    std::string key = Trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key", line_no);
    settings[key] = {Trim(line.substr(eq + 1)), line_no};
  }
  return settings;
}

ExperimentConfig DefaultConfig() {
  ExperimentConfig cfg;
  for (const char* m : {"sym:0", "sym:0.1", "sym:0.2", "sym:0.3", "sym:0.4",
                        "cc:0.4,0.2"}) {
    cfg.noise.push_back(ParseNoiseModel(m));
  }
  cfg.learners = {LearnerSpec::Parse("tree:gini"), LearnerSpec::Parse("rf")};
  return cfg;
}

ExperimentConfig ParseConfig(std::istream& in) {
  ExperimentConfig cfg = DefaultConfig();
  for (const auto& [key, entry] : ReadSettings(in)) {
    ApplySetting(cfg, key, entry.first, entry.second);
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Runs

void Aggregate(ResultRow& row) {
  row.repeats = row.runs.size();
  if (row.runs.empty()) {
    row.mean = row.std = 0.0;
    return;
  }
  double sum = 0.0;
  for (double v : row.runs) sum += v;
  row.mean = sum / static_cast<double>(row.runs.size());
  if (row.runs.size() < 2) {
    row.std = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : row.runs) ss += (v - row.mean) * (v - row.mean);
  row.std = std::sqrt(ss / static_cast<double>(row.runs.size() - 1));
}

namespace {

size_t DefaultSize(const std::string& generator) {
  return generator.starts_with("cb") ? 30000 : 40000;
}

std::string DatasetLabel(const std::string& dataset) {
  if (IsGeneratorName(dataset)) return dataset;
  return std::filesystem::path(dataset).filename().string();
}

double ScoreLearner(const LearnerSpec& learner, const ExperimentConfig& cfg,
                    size_t min_leaf, const Dataset& train, const Dataset& test,
                    uint64_t seed) {
  TreeParams tp;
  tp.criterion = learner.criterion;
  tp.min_leaf = min_leaf;
  tp.max_depth = cfg.max_depth;
  tp.seed = seed;
  if (learner.kind == LearnerSpec::Kind::kTree) {
    return Accuracy(FitTree(train, tp), test);
  }
  ForestParams fp;
  fp.n_trees = learner.n_trees;
  fp.tree_params = tp;
  fp.seed = seed;
  fp.threads = 1;
  if (learner.kind == LearnerSpec::Kind::kPurelyRandomForest) {
    fp.mode = ForestMode::kPurelyRandom;
    fp.k_splits = learner.k_splits;
  }
  return Accuracy(FitForest(train, fp), test);
}

// Accuracy (percent) of every (learner, noise) cell for one repeat.
using RepeatScores = std::vector<std::vector<double>>;

RepeatScores ScoreRepeat(const ExperimentConfig& cfg, size_t min_leaf,
                         const Dataset& train, const Dataset& validation,
                         const Dataset& test, uint64_t repeat_seed) {
  if (cfg.min_leaf_fraction) {
    min_leaf = std::max<size_t>(
        1, static_cast<size_t>(*cfg.min_leaf_fraction *
                               static_cast<double>(train.size())));
  }
  RepeatScores scores(cfg.learners.size(),
                      std::vector<double>(cfg.noise.size()));
  for (size_t k = 0; k < cfg.noise.size(); ++k) {
    const NoisyDataset noisy_train =
        InjectNoise(train, cfg.noise[k], DeriveSeed(repeat_seed, 2, k));
    if (!validation.empty()) {
      // Produced to mirror the protocol; no hyperparameter is tuned on it.
      (void)InjectNoise(validation, cfg.noise[k], DeriveSeed(repeat_seed, 3, k));
    }
    for (size_t l = 0; l < cfg.learners.size(); ++l) {
      scores[l][k] = 100.0 * ScoreLearner(cfg.learners[l], cfg, min_leaf,
                                          noisy_train.data, test,
                                          DeriveSeed(repeat_seed, 4, l));
    }
  }
  return scores;
}

void AppendRows(const ExperimentConfig& cfg, const std::string& dataset,
                const std::string& learner_suffix,
                const std::vector<RepeatScores>& per_repeat,
                ResultTable& table) {
  for (size_t l = 0; l < cfg.learners.size(); ++l) {
    for (size_t k = 0; k < cfg.noise.size(); ++k) {
      ResultRow row;
      row.dataset = DatasetLabel(dataset);
      row.learner = cfg.learners[l].Name() + learner_suffix;
      row.noise = FormatNoiseModel(cfg.noise[k]);
      for (const auto& scores : per_repeat) row.runs.push_back(scores[l][k]);
      Aggregate(row);
      table.rows.push_back(std::move(row));
    }
  }
}

ResultTable NoiseSweepAtLeafSize(const ExperimentConfig& cfg, size_t min_leaf,
                                 const std::string& suffix) {
  cfg.Validate();
  ResultTable table;
  for (size_t d = 0; d < cfg.datasets.size(); ++d) {
    const std::string& name = cfg.datasets[d];
    std::optional<Dataset> loaded;
    if (!IsGeneratorName(name)) loaded = LoadTable(name, cfg.table);
    const uint64_t dataset_seed = DeriveSeed(*cfg.seed, d);

    std::vector<RepeatScores> per_repeat(cfg.repeats);
    ParallelFor(cfg.repeats, cfg.threads, [&](size_t r) {
      const uint64_t rs = DeriveSeed(dataset_seed, r);
      const Dataset full =
          loaded ? *loaded
                 : GenerateByName(name, cfg.n.value_or(DefaultSize(name)),
                                  DeriveSeed(rs, 0));
      SplitSpec spec = cfg.split;
      spec.seed = DeriveSeed(rs, 1);
      DatasetSplit split = SplitDataset(full, spec);
      const Dataset& test = cfg.test_on_train ? split.train : split.test;
      per_repeat[r] =
          ScoreRepeat(cfg, min_leaf, split.train, split.validation, test, rs);
    });
    AppendRows(cfg, name, suffix, per_repeat, table);
  }
  return table;
}

}  // namespace

ResultTable RunNoiseSweep(const ExperimentConfig& cfg) {
  return NoiseSweepAtLeafSize(cfg, cfg.min_leaf, "");
}

ResultTable RunLeafSizeSweep(const ExperimentConfig& cfg) {
  if (cfg.leaf_sizes.empty()) throw ConfigError("leaf_sizes is empty");
  ResultTable table;
  for (size_t leaf : cfg.leaf_sizes) {
    if (leaf < 1) throw ConfigError("leaf sizes must be >= 1");
    ResultTable part =
        NoiseSweepAtLeafSize(cfg, leaf, "/leaf=" + std::to_string(leaf));
    for (auto& row : part.rows) table.rows.push_back(std::move(row));
  }
  return table;
}

ResultTable RunTrainingSizeSweep(const ExperimentConfig& cfg) {
  cfg.Validate();
  if (cfg.sizes.empty()) throw ConfigError("sizes is empty");
  ResultTable table;
  for (size_t d = 0; d < cfg.datasets.size(); ++d) {
    const std::string& name = cfg.datasets[d];
    if (!IsGeneratorName(name)) {
      throw ConfigError("training-size sweeps need a generated dataset");
    }
    const uint64_t dataset_seed = DeriveSeed(*cfg.seed, d);
    for (size_t size : cfg.sizes) {
      if (size < 1) throw ConfigError("sizes must be >= 1");
      std::vector<RepeatScores> per_repeat(cfg.repeats);
      ParallelFor(cfg.repeats, cfg.threads, [&](size_t r) {
        const uint64_t rs = DeriveSeed(dataset_seed, r);
        const Dataset train = GenerateByName(name, size, DeriveSeed(rs, 5, size));
        const Dataset test = GenerateByName(name, cfg.test_size, DeriveSeed(rs, 6));
        const Dataset empty(train.dim(), {}, {});
        per_repeat[r] = ScoreRepeat(cfg, cfg.min_leaf, train, empty,
                                    cfg.test_on_train ? train : test, rs);
      });
      AppendRows(cfg, name, "/n=" + std::to_string(size), per_repeat, table);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void OpenOrThrow(std::ofstream& out, const std::string& path) {
  out.open(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

}  // namespace

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

void WriteTable(const ResultTable& table, std::ostream& out) {
  out << "dataset,learner,noise,mean,std,repeats\n";
  for (const auto& row : table.rows) {
    out << CsvField(row.dataset) << ',' << CsvField(row.learner) << ','
        << CsvField(row.noise) << ',' << Fixed2(row.mean) << ','
        << Fixed2(row.std) << ',' << row.repeats << '\n';
  }
}

void EmitTable(const ResultTable& table, const std::string& path) {
  std::ofstream out;
  OpenOrThrow(out, path);
  WriteTable(table, out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

ResultTable ReadResultTable(std::istream& in) {
  ResultTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    auto f = SplitCsvLine(line);
    if (f.size() != 6) {
      throw std::runtime_error("result line " + std::to_string(line_no) +
                               ": expected 6 fields");
    }
    ResultRow row;
    row.dataset = f[0];
    row.learner = f[1];
    row.noise = f[2];
    row.mean = ParseDouble(f[3]);
    row.std = ParseDouble(f[4]);
    row.repeats = static_cast<size_t>(ParseDouble(f[5]));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void WriteRuns(const ResultTable& table, std::ostream& out) {
  out << "dataset,learner,noise,repeat,accuracy\n";
  for (const auto& row : table.rows) {
    for (size_t r = 0; r < row.runs.size(); ++r) {
      out << CsvField(row.dataset) << ',' << CsvField(row.learner) << ','
          << CsvField(row.noise) << ',' << r << ','
          << FormatDouble(row.runs[r]) << '\n';
    }
  }
}

void EmitRuns(const ResultTable& table, const std::string& path) {
  std::ofstream out;
  OpenOrThrow(out, path);
  WriteRuns(table, out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

ResultTable ReadRuns(std::istream& in) {
  ResultTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    auto f = SplitCsvLine(line);
    if (f.size() != 5) {
      throw std::runtime_error("run line " + std::to_string(line_no) +
                               ": expected 5 fields");
    }
    const double acc = ParseDouble(f[4]);
    if (table.rows.empty() || table.rows.back().dataset != f[0] ||
        table.rows.back().learner != f[1] || table.rows.back().noise != f[2]) {
      ResultRow row;
      row.dataset = f[0];
      row.learner = f[1];
      row.noise = f[2];
      table.rows.push_back(std::move(row));
    }
    table.rows.back().runs.push_back(acc);
  }
  for (auto& row : table.rows) Aggregate(row);
  return table;
}

}  // namespace noisetree
