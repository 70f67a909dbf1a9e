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

// Two-class impurity measures and split criteria.
//
// For a node with positive fraction p split into a left child holding a
// fraction `a` of the samples (positive fraction p_l) and a right child
// (positive fraction p_r):
//
//   gain   = G(p) - a G(p_l) - (1 - a) G(p_r)
//   twoing = a (1 - a) (p_l - p_r)^2
//
// with G one of gini 2p(1-p), base-2 entropy, or misclassification
// min(p, 1-p). Under symmetric label noise at rate eta every fraction maps
// to p(1 - 2 eta) + eta in the large-sample limit, which scales the gini
// gain and twoing by (1 - 2 eta)^2 and the misclassification gain by
// |1 - 2 eta|. NoisySplitFractions and NoisyGainClosedForm expose both
// sides of that identity.

#ifndef NOISETREE_CRITERIA_H_
#define NOISETREE_CRITERIA_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace noisetree {

enum class ImpurityKind { kGini, kEntropy, kMisclassification };

enum class Criterion { kGini, kEntropy, kMisclassification, kTwoing };

// Impurity underlying a gain criterion; nullopt for twoing.
std::optional<ImpurityKind> ImpurityOf(Criterion c);

// `gini`, `entropy`, `mc`, `twoing`.
Criterion ParseCriterion(std::string_view name);
std::string CriterionName(Criterion c);

struct SplitFractions;

// Integer counts describing a binary split of a node.
struct SplitStats {
  uint64_t n = 0;
  uint64_t n_left = 0;
  uint64_t n_right = 0;
  uint64_t n_pos = 0;
  uint64_t n_left_pos = 0;
  uint64_t n_right_pos = 0;

  // Validating constructor; totals are derived from the children.
  static SplitStats FromChildren(uint64_t n_left, uint64_t n_left_pos,
                                 uint64_t n_right, uint64_t n_right_pos);

  // Throws std::invalid_argument on inconsistent counts.
  void Validate() const;

  SplitFractions Fractions() const;
};

// Fraction view of a split. Counts are carried along unchanged so that a
// noisy mapping keeps n, n_left, n_right and a fixed.
struct SplitFractions {
  uint64_t n = 0;
  uint64_t n_left = 0;
  uint64_t n_right = 0;
  double a = 0.0;        // n_left / n
  double p = 0.0;        // parent positive fraction
  double p_left = 0.0;
  double p_right = 0.0;
};

double Impurity(ImpurityKind kind, double p);

// Impurity gain. Throws std::invalid_argument on a degenerate split (an
// empty child).
double Gain(ImpurityKind kind, const SplitStats& s);
double Gain(ImpurityKind kind, const SplitFractions& s);

// Twoing value a(1-a)(p_l-p_r)^2; same degenerate-split contract as Gain.
double Twoing(const SplitStats& s);
double Twoing(const SplitFractions& s);

// Gain for impurity criteria, twoing value for kTwoing.
double SplitScore(Criterion c, const SplitStats& s);
double SplitScore(Criterion c, const SplitFractions& s);

// Maps every positive fraction through p -> p(1-2 eta) + eta.
SplitFractions NoisySplitFractions(const SplitFractions& s, double eta);
SplitFractions NoisySplitFractions(const SplitStats& s, double eta);

// Large-sample criterion value under symmetric noise given the clean value.
// Entropy has no closed form and eta = 0.5 destroys all information; both
// throw std::invalid_argument.
double NoisyGainClosedForm(Criterion c, double clean_value, double eta);

}  // namespace noisetree

#endif  // NOISETREE_CRITERIA_H_
