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

// noisetree command-line tool.
//
// Exit codes: 0 success, 1 runtime/I-O error, 2 configuration or usage
// error, 3 a checked property failed (bounds dominance, counterexample,
// selftest).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"
#include "noisetree/bench.h"
#include "noisetree/bounds.h"
#include "noisetree/criteria.h"
#include "noisetree/data.h"
#include "noisetree/forest.h"
#include "noisetree/noise.h"
#include "noisetree/random.h"
#include "noisetree/tree.h"

namespace nt = noisetree;

namespace {

constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;

constexpr const char* kLabelHelp =
    "Input tables are delimited text, one sample per row. The label column "
    "must hold at most two distinct values; the larger one becomes +1 and "
    "the other -1. Values are compared numerically when both parse as "
    "numbers (so 0/1, -1/+1 and 1/2 all map as expected) and "
    "lexicographically otherwise.";

struct TableFlags {
  std::string delimiter = ",";
  bool header = false;
  int label_column = -1;

  void Add(CLI::App* app) {
    app->add_option("--delimiter", delimiter,
                    "Field delimiter: one character or 'tab'")
        ->capture_default_str();
    app->add_flag("--header", header, "First input row is a header");
    app->add_option("--label-column", label_column,
                    "Label column index; negative counts from the end")
        ->capture_default_str();
  }

  nt::TableOptions Options() const {
    nt::ExperimentConfig cfg;
    nt::ApplySetting(cfg, "delimiter", delimiter);
    cfg.table.header = header;
    cfg.table.label_column = label_column;
    return cfg.table;
  }
};

template <typename Fn>
void WithOutput(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  fn(out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Model files: a `MODEL <dim> <tree|forest>` line followed by the
// serialization.

void SaveModel(const std::string& path, size_t dim, const nt::DecisionTree* tree,
               const nt::RandomForest* forest) {
  WithOutput(path, [&](std::ostream& out) {
    out << "MODEL " << dim << ' ' << (tree ? "tree" : "forest") << '\n';
    if (tree) {
      tree->Serialize(out);
    } else {
      forest->Serialize(out);
    }
  });
}

struct LoadedModel {
  std::optional<nt::DecisionTree> tree;
  std::optional<nt::RandomForest> forest;

  nt::Label Predict(std::span<const double> x) const {
    return tree ? tree->Predict(x) : forest->Predict(x);
  }
};

LoadedModel LoadModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::string line;
  std::getline(in, line);
  std::istringstream head(line);
  std::string tag, kind;
  size_t dim = 0;
  if (!(head >> tag >> dim >> kind) || tag != "MODEL" || dim == 0 ||
      (kind != "tree" && kind != "forest")) {
    throw std::runtime_error("'" + path + "' is not a noisetree model file");
  }
  LoadedModel m;
  if (kind == "tree") {
    m.tree = nt::DecisionTree::Deserialize(in, dim);
  } else {
    m.forest = nt::RandomForest::Deserialize(in, dim);
  }
  return m;
}

// ---------------------------------------------------------------------------
// generate / noise / train / eval

struct GenerateArgs {
  std::string generator = "cb2";
  size_t n = 30000;
  uint64_t seed = 0;
  std::string output;
};

void RunGenerate(const GenerateArgs& a) {
  if (!nt::IsGeneratorName(a.generator)) {
    throw nt::ConfigError("unknown generator '" + a.generator +
                          "' (expected cb2, cb4, lin3, lin4)");
  }
  const auto ds = nt::GenerateByName(a.generator, a.n, a.seed);
  WithOutput(a.output, [&](std::ostream& out) { nt::WriteTable(ds, out); });
}

struct NoiseArgs {
  std::string input;
  TableFlags table;
  std::string model = "sym:0.2";
  uint64_t seed = 0;
  std::string output;
  std::string mask_output;
};

void RunNoise(const NoiseArgs& a) {
  nt::NoiseModel model;
  try {
    model = nt::ParseNoiseModel(a.model);
  } catch (const std::invalid_argument& e) {
    throw nt::ConfigError(e.what());
  }
  const auto ds = nt::LoadTable(a.input, a.table.Options());
  const auto noisy = nt::InjectNoise(ds, model, a.seed);
  WithOutput(a.output,
             [&](std::ostream& out) { nt::WriteTable(noisy.data, out); });
  if (!a.mask_output.empty()) {
    WithOutput(a.mask_output, [&](std::ostream& out) {
      for (uint8_t f : noisy.flip_mask) out << int(f) << '\n';
    });
  }
  size_t flipped = 0;
  for (uint8_t f : noisy.flip_mask) flipped += f;
  std::cerr << "flipped " << flipped << " of " << ds.size() << " labels\n";
}

struct TrainArgs {
  std::string input;
  TableFlags table;
  std::string criterion = "gini";
  size_t min_leaf = 1;
  std::optional<size_t> max_depth;
  std::optional<size_t> feature_subset;
  uint64_t seed = 0;
  size_t trees = 0;
  std::string mode = "greedy";
  size_t k_splits = 0;
  bool no_bootstrap = false;
  size_t threads = 1;
  std::string model_output;
};

void RunTrain(const TrainArgs& a) {
  nt::TreeParams tp;
  try {
    tp.criterion = nt::ParseCriterion(a.criterion);
  } catch (const std::invalid_argument& e) {
    throw nt::ConfigError(e.what());
  }
  tp.min_leaf = a.min_leaf;
  tp.max_depth = a.max_depth;
  tp.feature_subset = a.feature_subset;
  tp.seed = a.seed;
  const auto ds = nt::LoadTable(a.input, a.table.Options());
  if (a.trees == 0) {
    const auto tree = nt::FitTree(ds, tp);
    SaveModel(a.model_output, ds.dim(), &tree, nullptr);
    std::cerr << "tree: " << tree.leaf_count() << " leaves, depth "
              << tree.depth() << ", training accuracy "
              << nt::Accuracy(tree, ds) << '\n';
    return;
  }
  nt::ForestParams fp;
  fp.n_trees = a.trees;
  fp.tree_params = tp;
  fp.bootstrap = !a.no_bootstrap;
  try {
    fp.mode = nt::ParseForestMode(a.mode);
  } catch (const std::invalid_argument& e) {
    throw nt::ConfigError(e.what());
  }
  fp.k_splits = a.k_splits;
  fp.seed = a.seed;
  fp.threads = a.threads;
  const auto forest = nt::FitForest(ds, fp);
  SaveModel(a.model_output, ds.dim(), nullptr, &forest);
  std::cerr << "forest: " << forest.trees().size()
            << " trees, training accuracy " << nt::Accuracy(forest, ds)
            << '\n';
}

struct EvalArgs {
  std::string model;
  std::string input;
  TableFlags table;
  std::string predictions;
};

void RunEval(const EvalArgs& a) {
  const auto model = LoadModel(a.model);
  const auto ds = nt::LoadTable(a.input, a.table.Options());
  size_t correct = 0;
  std::vector<nt::Label> predicted(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) {
    predicted[i] = model.Predict(ds.row(i));
    correct += predicted[i] == ds.label(i);
  }
  if (!a.predictions.empty()) {
    WithOutput(a.predictions, [&](std::ostream& out) {
      for (nt::Label y : predicted) out << (y == nt::Label::kPositive ? "+1" : "-1") << '\n';
    });
  }
  std::printf("samples %zu\ncorrect %zu\naccuracy %.4f\n", ds.size(), correct,
              ds.empty() ? 0.0 : 100.0 * correct / ds.size());
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepArgs {
  std::string config;
  std::map<std::string, std::string> flags;
};

std::string FlagName(const std::string& key) {
  std::string flag = key;
  for (char& c : flag) {
    if (c == '_') c = '-';
  }
  return "--" + flag;
}

void AddConfigFlags(CLI::App* app, SweepArgs& a) {
  app->add_option("--config", a.config, "Key = value configuration file");
  for (const std::string& key : nt::ConfigKeys()) {
    std::string help = "Overrides config key '" + key + "'";
    if (key == "seed") help = "Master seed (required here or in --config)";
    app->add_option_function<std::string>(
        FlagName(key), [&a, key](const std::string& v) { a.flags[key] = v; },
        help);
  }
}

nt::ExperimentConfig BuildConfig(const SweepArgs& a) {
  nt::ExperimentConfig cfg = nt::DefaultConfig();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw nt::ConfigError("cannot read config '" + a.config + "'");
    cfg = nt::ParseConfig(in);
  }
  for (const auto& [key, value] : a.flags) nt::ApplySetting(cfg, key, value);
  if (!cfg.seed) throw nt::ConfigError("--seed is required");
  cfg.Validate();
  return cfg;
}

void RunSweep(const SweepArgs& a, const std::string& kind) {
  const auto cfg = BuildConfig(a);
  nt::ResultTable table;
  if (kind == "sweep") {
    table = nt::RunNoiseSweep(cfg);
  } else if (kind == "leaf-sweep") {
    if (cfg.leaf_sizes.empty()) throw nt::ConfigError("leaf_sizes is empty");
    table = nt::RunLeafSizeSweep(cfg);
  } else {
    if (cfg.sizes.empty()) throw nt::ConfigError("sizes is empty");
    table = nt::RunTrainingSizeSweep(cfg);
  }
  if (cfg.output.empty()) {
    nt::WriteTable(table, std::cout);
  } else {
    nt::EmitTable(table, cfg.output);
  }
  if (!cfg.runs_output.empty()) nt::EmitRuns(table, cfg.runs_output);
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
  std::vector<std::string> criteria{"leaf"};
  std::vector<double> rho{0.1, 0.2, 0.5};
  std::vector<double> eta{0.1, 0.25, 0.4};
  std::vector<double> delta{0.05, 0.1};
  uint64_t trials = 10000;
  uint64_t seed = 0;
  size_t threads = 1;
};

// Balanced split pair at n samples whose clean score gap is at least rho:
// a sends 0.5 - x and 0.5 + x positive fractions to its two halves, b keeps
// both halves at 0.5. Returns nullopt when no x <= 0.5 reaches rho.
std::optional<std::pair<nt::SplitStats, nt::SplitStats>> MarginPair(
    nt::Criterion c, double rho, uint64_t n) {
  const auto b = nt::SplitAtSize(n, 0.5, 0.5, 0.5);
  const double base = nt::SplitScore(c, b);
  // Clean scores of a: gini 2x^2, mc x, twoing x^2.
  double x = c == nt::Criterion::kGini ? std::sqrt(rho / 2.0)
             : c == nt::Criterion::kTwoing ? std::sqrt(rho)
                                           : rho;
  const double step = 1.0 / static_cast<double>(n);
  for (; x <= 0.5; x += step) {
    const auto a = nt::SplitAtSize(n, 0.5, 0.5 - x, 0.5 + x);
    if (nt::SplitScore(c, a) - base >= rho) return std::make_pair(a, b);
  }
  return std::nullopt;
}

int RunBounds(const BoundsArgs& a) {
  std::vector<nt::BoundCriterion> criteria;
  for (const auto& name : a.criteria) {
    if (name == "all") {
      criteria = {nt::BoundCriterion::kLeaf, nt::BoundCriterion::kGini,
                  nt::BoundCriterion::kMisclassification,
                  nt::BoundCriterion::kTwoing};
      break;
    }
    try {
      criteria.push_back(nt::ParseBoundCriterion(name));
    } catch (const std::invalid_argument& e) {
      throw nt::ConfigError(e.what());
    }
  }
  std::printf("%-8s %6s %6s %6s %12s %10s %8s %s\n", "criterion", "rho", "eta",
              "delta", "n", "rate", "envelope", "result");
  bool all_ok = true;
  uint64_t point = 0;
  for (auto c : criteria) {
    for (double rho : a.rho) {
      for (double eta : a.eta) {
        for (double delta : a.delta) {
          nt::BoundQuery q{rho, eta, delta, c};
          try {
            nt::SampleBound(q);
          } catch (const std::invalid_argument& e) {
            throw nt::ConfigError(e.what());
          }
          const uint64_t seed = nt::DeriveSeed(a.seed, point++);
          nt::MonteCarloResult r;
          if (c == nt::BoundCriterion::kLeaf) {
            r = nt::ValidateLeafBound(q, a.trials, seed, a.threads);
          } else {
            const uint64_t n = nt::SplitSampleBound(q);
            const auto pair = MarginPair(nt::SplitCriterionOf(c), rho, n);
            if (!pair) {
              std::printf("%-8s %6.3g %6.3g %6.3g %12llu %10s %8s %s\n",
                          nt::BoundCriterionName(c).c_str(), rho, eta, delta,
                          static_cast<unsigned long long>(n), "-", "-",
                          "skip (rho above the criterion's range)");
              continue;
            }
            r = nt::ValidateSplitBound(q, pair->first, pair->second, a.trials,
                                       seed, a.threads);
          }
          all_ok &= r.dominated;
          std::printf("%-8s %6.3g %6.3g %6.3g %12llu %10.5f %8llu %s\n",
                      nt::BoundCriterionName(c).c_str(), rho, eta, delta,
                      static_cast<unsigned long long>(r.n), r.rate,
                      static_cast<unsigned long long>(r.envelope),
                      r.dominated ? "pass" : "FAIL");
        }
      }
    }
  }
  return all_ok ? 0 : kExitCheck;
}

// ---------------------------------------------------------------------------
// counterexample / selftest

int RunCounterexample() {
  const auto r = nt::EntropyCounterexample();
  std::printf("split  n_l  n_l+  n_r  n_r+\n");
  std::printf("f1    %4llu  %4llu  %4llu  %4llu\n",
              static_cast<unsigned long long>(r.f1.n_left),
              static_cast<unsigned long long>(r.f1.n_left_pos),
              static_cast<unsigned long long>(r.f1.n_right),
              static_cast<unsigned long long>(r.f1.n_right_pos));
  std::printf("f2    %4llu  %4llu  %4llu  %4llu\n\n",
              static_cast<unsigned long long>(r.f2.n_left),
              static_cast<unsigned long long>(r.f2.n_left_pos),
              static_cast<unsigned long long>(r.f2.n_right),
              static_cast<unsigned long long>(r.f2.n_right_pos));
  std::printf("criterion  eta   gain(f1)    gain(f2)    preferred\n");
  auto line = [](const char* name, double eta, double f1, double f2) {
    std::printf("%-9s  %.1f  %.7f   %.7f   %s\n", name, eta, f1, f2,
                f1 > f2 ? "f1" : "f2");
  };
  line("entropy", 0.0, r.entropy_clean_f1, r.entropy_clean_f2);
  line("entropy", r.eta, r.entropy_noisy_f1, r.entropy_noisy_f2);
  line("gini", 0.0, r.gini_clean_f1, r.gini_clean_f2);
  line("gini", r.eta, r.gini_noisy_f1, r.gini_noisy_f2);
  const bool ok =
      r.clean_prefers_f2() && r.noisy_prefers_f1() && r.gini_order_preserved();
  std::printf("\nentropy ordering reverses under noise: %s\n",
              r.clean_prefers_f2() && r.noisy_prefers_f1() ? "yes" : "no");
  std::printf("gini ordering preserved: %s\n",
              r.gini_order_preserved() ? "yes" : "no");
  return ok ? 0 : kExitCheck;
}

int RunSelftest() {
  int failed = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", name);
    failed += !ok;
  };

  {
    const auto s = nt::SplitStats::FromChildren(400, 30, 600, 420);
    bool ok = true;
    for (double eta : {0.1, 0.3, 0.45}) {
      const auto noisy = nt::NoisySplitFractions(s, eta);
      for (auto c : {nt::Criterion::kGini, nt::Criterion::kMisclassification,
                     nt::Criterion::kTwoing}) {
        ok &= std::abs(nt::SplitScore(c, noisy) -
                       nt::NoisyGainClosedForm(c, nt::SplitScore(c, s), eta)) <
              1e-12;
      }
    }
    check("noisy gain scaling", ok);
  }
  {
    const auto r = nt::EntropyCounterexample();
    check("entropy counterexample",
          r.clean_prefers_f2() && r.noisy_prefers_f1() &&
              r.gini_order_preserved());
  }
  {
    nt::BoundQuery leaf{0.5, 0.25, 0.05, nt::BoundCriterion::kLeaf};
    nt::BoundQuery gini{0.1, 0.2, 0.05, nt::BoundCriterion::kGini};
    check("sample bounds",
          nt::LeafSampleBound(leaf) == 96 && nt::SplitSampleBound(gini) == 109613);
    check("leaf bound dominance",
          nt::ValidateLeafBound(leaf, 2000, 1).dominated);
  }
  {
    const auto ds = nt::GenerateCheckerboard(2, 6000, 3);
    const auto split = nt::SplitDataset(ds, nt::SplitSpec{0.6, 0.2, 0.2, 4});
    nt::TreeParams tp;
    tp.min_leaf = 50;
    const auto clean = nt::FitTree(split.train, tp);
    const auto noisy =
        nt::FitTree(nt::InjectNoise(split.train, nt::SymmetricNoise{0.2}, 5), tp);
    check("clean tree accuracy >= 0.98", nt::Accuracy(clean, split.test) >= 0.98);
    check("noisy tree accuracy >= 0.95", nt::Accuracy(noisy, split.test) >= 0.95);
    std::istringstream in(clean.ToString());
    check("tree serialization round trip",
          nt::TreesEqual(clean, nt::DecisionTree::Deserialize(in, 2), 0.0));
  }
  std::printf("%s\n", failed ? "selftest FAILED" : "selftest passed");
  return failed ? kExitCheck : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "noisetree: decision trees and random forests under label noise, with "
      "noise injection, sample-complexity bounds and experiment sweeps.\n\n" +
      std::string(kLabelHelp)};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset");
  generate->add_option("--generator", gen.generator, "cb2, cb4, lin3 or lin4")
      ->capture_default_str();
  generate->add_option("--n", gen.n, "Number of samples")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("-o,--output", gen.output, "Output CSV (default stdout)");

  NoiseArgs noi;
  auto* noise = app.add_subcommand("noise", "Flip labels of a table");
  noise->footer(kLabelHelp);
  noise->add_option("-i,--input", noi.input, "Input table")->required();
  noi.table.Add(noise);
  noise->add_option("--model", noi.model,
                    "sym:<eta>, cc:<eta+>,<eta-> or nu:affine:<a>,<b>")
      ->capture_default_str();
  noise->add_option("--seed", noi.seed, "Random seed")->capture_default_str();
  noise->add_option("-o,--output", noi.output, "Output CSV (default stdout)");
  noise->add_option("--mask-output", noi.mask_output,
                    "Write the 0/1 flip mask, one line per sample");

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Fit a tree or forest");
  train->footer(kLabelHelp);
  train->add_option("-i,--input", tr.input, "Training table")->required();
  tr.table.Add(train);
  train->add_option("--criterion", tr.criterion, "gini, entropy, mc or twoing")
      ->capture_default_str();
  train->add_option("--min-leaf", tr.min_leaf, "Minimum samples per leaf")
      ->capture_default_str();
  train->add_option("--max-depth", tr.max_depth, "Maximum depth");
  train->add_option("--feature-subset", tr.feature_subset,
                    "Features drawn per node (forest default ceil(sqrt(d)))");
  train->add_option("--seed", tr.seed, "Random seed")->capture_default_str();
  train->add_option("--trees", tr.trees, "Fit a forest with this many trees");
  train->add_option("--mode", tr.mode, "Forest mode: greedy or purely_random")
      ->capture_default_str();
  train->add_option("--k-splits", tr.k_splits,
                    "Random splits per tree in purely_random mode");
  train->add_flag("--no-bootstrap", tr.no_bootstrap,
                  "Fit every forest tree on the full table");
  train->add_option("--threads", tr.threads, "Worker threads")
      ->capture_default_str();
  train->add_option("-o,--model-output", tr.model_output,
                    "Model file (default stdout)");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Score a model on a table");
  eval->footer(kLabelHelp);
  eval->add_option("-m,--model", ev.model, "Model file")->required();
  eval->add_option("-i,--input", ev.input, "Table with true labels")->required();
  ev.table.Add(eval);
  eval->add_option("--predictions", ev.predictions,
                   "Write predicted labels, one per line");

  SweepArgs sw;
  auto* sweep = app.add_subcommand(
      "sweep", "Noise sweep: learners x noise models, scored on clean test data");
  AddConfigFlags(sweep, sw);
  auto* leaf_sweep =
      app.add_subcommand("leaf-sweep", "Noise sweep per minimum leaf size");
  AddConfigFlags(leaf_sweep, sw);
  auto* size_sweep =
      app.add_subcommand("size-sweep", "Noise sweep per training-set size");
  AddConfigFlags(size_sweep, sw);
  for (auto* sub : {sweep, leaf_sweep, size_sweep}) sub->footer(kLabelHelp);

  BoundsArgs bo;
  auto* bounds = app.add_subcommand(
      "bounds", "Sample-complexity bounds with Monte Carlo dominance checks");
  bounds->add_option("--criterion", bo.criteria, "leaf, gini, mc, twoing or all")
      ->capture_default_str();
  bounds->add_option("--rho", bo.rho, "Margins")->capture_default_str();
  bounds->add_option("--eta", bo.eta, "Noise rates")->capture_default_str();
  bounds->add_option("--delta", bo.delta, "Failure probabilities")
      ->capture_default_str();
  bounds->add_option("--trials", bo.trials, "Monte Carlo trials per point")
      ->capture_default_str();
  bounds->add_option("--seed", bo.seed, "Random seed")->capture_default_str();
  bounds->add_option("--threads", bo.threads, "Worker threads")
      ->capture_default_str();

  auto* counter = app.add_subcommand(
      "counterexample", "Entropy gain ordering reversal under noise");
  auto* selftest = app.add_subcommand("selftest", "Quick internal checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (generate->parsed()) RunGenerate(gen);
    if (noise->parsed()) RunNoise(noi);
    if (train->parsed()) RunTrain(tr);
    if (eval->parsed()) RunEval(ev);
    if (sweep->parsed()) RunSweep(sw, "sweep");
    if (leaf_sweep->parsed()) RunSweep(sw, "leaf-sweep");
    if (size_sweep->parsed()) RunSweep(sw, "size-sweep");
    if (bounds->parsed()) return RunBounds(bo);
    if (counter->parsed()) return RunCounterexample();
    if (selftest->parsed()) return RunSelftest();
  } catch (const nt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
