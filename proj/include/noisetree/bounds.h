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

// Sample-size bounds for noise-robust majority voting and split selection,
// with Monte Carlo validators and the entropy counterexample.
//
// With margin rho, symmetric noise rate eta and failure probability delta,
// and s = rho^2 (1 - 2 eta)^2:
//
//   leaf vote           n >= 2 / s * ln(1 / delta)
//   gini split order    n >= 72 / s * ln(12 / delta)
//   mc split order      n >= 18 / s * ln(12 / delta)
//   twoing split order  n >= 2 / s * ln(8 / delta)
//
// All four come from Hoeffding's inequality and are loose; the validators
// measure how often the guarded event actually fails at the bound.

#ifndef NOISETREE_BOUNDS_H_
#define NOISETREE_BOUNDS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "noisetree/criteria.h"

namespace noisetree {

enum class BoundCriterion { kLeaf, kGini, kMisclassification, kTwoing };

std::string BoundCriterionName(BoundCriterion c);
BoundCriterion ParseBoundCriterion(std::string_view name);
// Split criterion scored by a split bound; throws for kLeaf.
Criterion SplitCriterionOf(BoundCriterion c);

struct BoundQuery {
  double rho = 1.0;    // clean margin (vote fraction gap or gain gap)
  double eta = 0.0;    // symmetric noise rate, != 0.5
  double delta = 0.05;
  BoundCriterion criterion = BoundCriterion::kLeaf;

  // rho in (0, 1], delta in (0, 1), eta in [0, 1) and != 0.5.
  void Validate() const;
};

// Requires criterion == kLeaf and eta < 0.5.
uint64_t LeafSampleBound(const BoundQuery& q);
// Requires a split criterion.
uint64_t SplitSampleBound(const BoundQuery& q);
// Dispatches on q.criterion.
uint64_t SampleBound(const BoundQuery& q);

struct MonteCarloResult {
  uint64_t n = 0;          // samples per trial
  uint64_t trials = 0;
  uint64_t failures = 0;
  double rate = 0.0;       // failures / trials
  uint64_t envelope = 0;   // 99% upper quantile of Binomial(trials, delta)
  bool dominated = false;  // failures <= envelope
};

// Smallest k with P[Binomial(trials, p) <= k] >= level.
uint64_t BinomialUpperQuantile(uint64_t trials, double p, double level);

// Builds a leaf of n = LeafSampleBound(q) clean labels with
// ceil(n (1 + rho) / 2) positives, flips each with probability eta and
// counts trials where negatives end up strictly ahead. Each trial draws
// from its own stream keyed by (seed, trial).
MonteCarloResult ValidateLeafBound(const BoundQuery& q, uint64_t trials,
                                   uint64_t seed, size_t threads = 1);

// Integer split counts at n samples closest to the given fractions.
SplitStats SplitAtSize(uint64_t n, double a, double p_left, double p_right);

// Both splits must have n == SplitSampleBound(q) and a clean score gap
// (a over b) of at least q.rho. Each trial flips labels at rate eta in both
// splits, rescores them from the noisy counts and records a failure when a
// no longer scores strictly higher.
MonteCarloResult ValidateSplitBound(const BoundQuery& q, const SplitStats& a,
                                    const SplitStats& b, uint64_t trials,
                                    uint64_t seed, size_t threads = 1);

struct CounterexampleReport {
  double eta = 0.4;
  SplitStats f1;
  SplitStats f2;
  double entropy_clean_f1 = 0.0;
  double entropy_clean_f2 = 0.0;
  double entropy_noisy_f1 = 0.0;
  double entropy_noisy_f2 = 0.0;
  double gini_clean_f1 = 0.0;
  double gini_clean_f2 = 0.0;
  double gini_noisy_f1 = 0.0;
  double gini_noisy_f2 = 0.0;

  bool clean_prefers_f2() const { return entropy_clean_f2 > entropy_clean_f1; }
  bool noisy_prefers_f1() const { return entropy_noisy_f1 > entropy_noisy_f2; }
  bool gini_order_preserved() const {
    return (gini_clean_f1 > gini_clean_f2) == (gini_noisy_f1 > gini_noisy_f2);
  }
};

// Two splits of the same node whose entropy-gain ordering reverses at
// eta = 0.4:
//   f1: n_l = n_r = 0.5 n, n_l+ = 0.05 n, n_r+ = 0.25 n
//   f2: n_l = 0.3 n, n_r = 0.7 n, n_l+ = 0.003 n, n_r+ = 0.297 n
CounterexampleReport EntropyCounterexample();

}  // namespace noisetree

#endif  // NOISETREE_BOUNDS_H_
