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
#include <random>

#include "noisetree/bounds.h"
#include "noisetree/data.h"
#include "noisetree/noise.h"
#include "noisetree/random.h"

namespace noisetree {
namespace {

BoundQuery Leaf(double rho, double eta, double delta) {
  return {rho, eta, delta, BoundCriterion::kLeaf};
}

TEST(LeafBoundTest, Examples) {
  EXPECT_EQ(LeafSampleBound(Leaf(1.0, 0.0, std::exp(-1.0))), 2u);
  EXPECT_EQ(LeafSampleBound(Leaf(0.5, 0.25, 0.05)), 96u);
  EXPECT_THROW(LeafSampleBound(Leaf(0.5, 0.6, 0.05)), std::invalid_argument);
  EXPECT_THROW(LeafSampleBound(Leaf(0.0, 0.1, 0.05)), std::invalid_argument);
  EXPECT_THROW(LeafSampleBound(Leaf(0.5, 0.1, 1.0)), std::invalid_argument);
}

TEST(SplitBoundTest, Examples) {
  // ceil(20000 * ln 240) = ceil(109612.78)
  EXPECT_EQ(SplitSampleBound({0.1, 0.2, 0.05, BoundCriterion::kGini}), 109613u);
  // ceil(2 ln 100) = ceil(9.21)
  EXPECT_EQ(SplitSampleBound({1.0, 0.0, 0.08, BoundCriterion::kTwoing}), 10u);
  EXPECT_EQ(SplitSampleBound({0.5, 0.1, 0.05, BoundCriterion::kMisclassification}),
            static_cast<uint64_t>(std::ceil(18 / (0.25 * 0.64) * std::log(240.0))));
  EXPECT_THROW(SplitSampleBound(Leaf(0.1, 0.1, 0.1)), std::invalid_argument);
  EXPECT_THROW(SplitSampleBound({0.1, 0.5, 0.1, BoundCriterion::kGini}),
               std::invalid_argument);
}

// The unrounded bounds scale exactly by 9 between eta = 0.2 and 0.4; after
// the ceiling, ceil(9x) lies in (9 (ceil(x) - 1), 9 ceil(x)].
TEST(BoundTest, InverseSquareScaling) {
  for (auto c : {BoundCriterion::kLeaf, BoundCriterion::kGini,
                 BoundCriterion::kMisclassification, BoundCriterion::kTwoing}) {
    for (double rho : {0.1, 0.3, 1.0}) {
      const double lo = static_cast<double>(SampleBound({rho, 0.2, 0.05, c}));
      const double hi = static_cast<double>(SampleBound({rho, 0.4, 0.05, c}));
      EXPECT_LE(hi, 9.0 * lo) << BoundCriterionName(c);
      EXPECT_GT(hi, 9.0 * (lo - 1.0)) << BoundCriterionName(c);
    }
  }
}

TEST(BoundTest, Monotone) {
  for (auto c : {BoundCriterion::kLeaf, BoundCriterion::kGini,
                 BoundCriterion::kMisclassification, BoundCriterion::kTwoing}) {
    uint64_t prev = 0;
    for (double eta : {0.0, 0.1, 0.2, 0.3, 0.4, 0.45}) {
      const uint64_t n = SampleBound({0.3, eta, 0.05, c});
      EXPECT_GE(n, prev);
      prev = n;
    }
    EXPECT_GE(SampleBound({0.1, 0.2, 0.05, c}), SampleBound({0.2, 0.2, 0.05, c}));
    EXPECT_GE(SampleBound({0.1, 0.2, 0.01, c}), SampleBound({0.1, 0.2, 0.1, c}));
  }
}

TEST(BinomialQuantileTest, Values) {
  EXPECT_EQ(BinomialUpperQuantile(100, 0.0, 0.99), 0u);
  EXPECT_EQ(BinomialUpperQuantile(100, 1.0, 0.99), 100u);
  // P[Bin(10, 0.5) <= 8] = 0.989, <= 9 = 0.999.
  EXPECT_EQ(BinomialUpperQuantile(10, 0.5, 0.99), 9u);
  const uint64_t q = BinomialUpperQuantile(10000, 0.05, 0.99);
  EXPECT_GT(q, 500u);
  EXPECT_LT(q, 560u);
}

TEST(ValidateLeafTest, NoNoiseNeverFails) {
  const auto r = ValidateLeafBound(Leaf(0.2, 0.0, 0.05), 2000, 1);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_TRUE(r.dominated);
}

TEST(ValidateLeafTest, Examples) {
  for (const auto& q : {Leaf(0.5, 0.25, 0.05), Leaf(0.2, 0.4, 0.1)}) {
    const auto r = ValidateLeafBound(q, 10000, 2);
    EXPECT_EQ(r.n, LeafSampleBound(q));
    EXPECT_LE(r.rate, q.delta);
    EXPECT_TRUE(r.dominated);
  }
}

TEST(ValidateLeafTest, IndependentOfThreads) {
  const auto q = Leaf(0.1, 0.3, 0.1);
  const auto a = ValidateLeafBound(q, 3000, 9, 1);
  const auto b = ValidateLeafBound(q, 3000, 9, 4);
  EXPECT_EQ(a.failures, b.failures);
}

// Leaf-level majority preservation with n at the bound, using full datasets
// and InjectNoise rather than binomial shortcuts.
TEST(LeafMajorityTest, SymmetricNoiseKeepsMajority) {
  const auto q = Leaf(0.3, 0.3, 0.05);
  const uint64_t n = LeafSampleBound(q);
  const uint64_t n_pos = static_cast<uint64_t>(std::ceil(n * 1.3 / 2));
  std::vector<Label> labels(n, Label::kNegative);
  std::fill(labels.begin(), labels.begin() + n_pos, Label::kPositive);
  const Dataset leaf(1, std::vector<double>(n, 0.0), labels);
  const uint64_t trials = 2000;
  uint64_t failures = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    const auto noisy = InjectNoise(leaf, SymmetricNoise{q.eta}, DeriveSeed(3, t));
    failures += 2 * noisy.data.CountPositive() < n;
  }
  EXPECT_LE(failures, BinomialUpperQuantile(trials, q.delta, 0.99));
}

TEST(LeafMajorityTest, PureLeafUnderNonUniformNoise) {
  // Rates 0.1 + 0.3 x on x in [0, 1] stay below 0.4; the bound at eta = 0.4
  // with rho = 1 covers every rate in the leaf.
  const auto q = Leaf(1.0, 0.4, 0.05);
  const uint64_t n = LeafSampleBound(q);
  Rng rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  const Dataset leaf(1, x, std::vector<Label>(n, Label::kPositive));
  const NonUniformNoise model{NonUniformNoise::Family::kAffine, {0.1, 0.3}};
  const uint64_t trials = 2000;
  uint64_t failures = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    const auto noisy = InjectNoise(leaf, model, DeriveSeed(5, t));
    failures += 2 * noisy.data.CountPositive() < n;
  }
  EXPECT_LE(failures, BinomialUpperQuantile(trials, q.delta, 0.99));
}

TEST(ValidateSplitTest, NoNoiseNeverFlips) {
  BoundQuery q{0.2, 0.0, 0.1, BoundCriterion::kGini};
  const uint64_t n = SplitSampleBound(q);
  const auto sa = SplitAtSize(n, 0.5, 0.1, 0.9);
  const auto sb = SplitAtSize(n, 0.5, 0.4, 0.6);
  const auto r = ValidateSplitBound(q, sa, sb, 2000, 1);
  EXPECT_EQ(r.failures, 0u);
}

TEST(ValidateSplitTest, CounterexamplePairUnderGini) {
  const auto ce = EntropyCounterexample();
  const double gap =
      SplitScore(Criterion::kGini, ce.f1) - SplitScore(Criterion::kGini, ce.f2);
  BoundQuery q{0.95 * gap, 0.2, 0.05, BoundCriterion::kGini};
  const uint64_t n = SplitSampleBound(q);
  const auto sa = SplitAtSize(n, 0.5, 0.1, 0.5);
  const auto sb = SplitAtSize(n, 0.3, 0.01, 0.297 / 0.7);
  const auto r = ValidateSplitBound(q, sa, sb, 10000, 2);
  EXPECT_LE(r.rate, 0.05);
  EXPECT_TRUE(r.dominated);
}

TEST(ValidateSplitTest, TwoingSyntheticPair) {
  // a(1-a)(p_l-p_r)^2: 0.24 * 0.36 = 0.0864 vs 0.25 * 0.16 = 0.04.
  BoundQuery q{0.04, 0.3, 0.1, BoundCriterion::kTwoing};
  const uint64_t n = SplitSampleBound(q);
  const auto sa = SplitAtSize(n, 0.4, 0.1, 0.7);
  const auto sb = SplitAtSize(n, 0.5, 0.2, 0.6);
  const auto r = ValidateSplitBound(q, sa, sb, 10000, 3);
  EXPECT_LE(r.rate, 0.1);
  EXPECT_TRUE(r.dominated);
}

TEST(ValidateSplitTest, Preconditions) {
  BoundQuery q{0.2, 0.1, 0.1, BoundCriterion::kGini};
  const uint64_t n = SplitSampleBound(q);
  const auto strong = SplitAtSize(n, 0.5, 0.1, 0.9);
  const auto weak = SplitAtSize(n, 0.5, 0.4, 0.6);
  EXPECT_THROW(ValidateSplitBound(q, weak, strong, 10, 1), std::invalid_argument);
  EXPECT_THROW(ValidateSplitBound(q, SplitAtSize(n + 1, 0.5, 0.1, 0.9), weak, 10, 1),
               std::invalid_argument);
  EXPECT_THROW(ValidateSplitBound(Leaf(0.2, 0.1, 0.1), strong, weak, 10, 1),
               std::invalid_argument);
}

TEST(CounterexampleTest, Report) {
  const auto r = EntropyCounterexample();
  EXPECT_EQ(r.f1.n, 1000u);
  EXPECT_EQ(r.f2.n_left_pos, 3u);
  EXPECT_TRUE(r.clean_prefers_f2());
  EXPECT_TRUE(r.noisy_prefers_f1());
  EXPECT_TRUE(r.gini_order_preserved());
  EXPECT_NEAR(r.entropy_clean_f1, 0.146793, 1e-6);
  EXPECT_NEAR(r.entropy_clean_f2, 0.168676, 1e-6);
  EXPECT_NEAR(r.gini_clean_f1, 0.08, 1e-12);
  EXPECT_NEAR(r.gini_noisy_f1, 0.0032, 1e-12);
}

TEST(CounterexampleTest, GiniNeverFlipsOnGrid) {
  const auto r = EntropyCounterexample();
  for (int k = 1; k < 20; ++k) {
    if (k == 10) continue;
    const double eta = 0.05 * k;
    EXPECT_GT(Gain(ImpurityKind::kGini, NoisySplitFractions(r.f1, eta)),
              Gain(ImpurityKind::kGini, NoisySplitFractions(r.f2, eta)));
  }
}

}  // namespace
}  // namespace noisetree
