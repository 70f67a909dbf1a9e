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

#include "noisetree/bounds.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "noisetree/random.h"

namespace noisetree {

std::string BoundCriterionName(BoundCriterion c) {
  switch (c) {
    case BoundCriterion::kLeaf:
      return "leaf";
    case BoundCriterion::kGini:
      return "gini";
    case BoundCriterion::kMisclassification:
      return "mc";
    case BoundCriterion::kTwoing:
      return "twoing";
  }
  return "?";
}

BoundCriterion ParseBoundCriterion(std::string_view name) {
  if (name == "leaf") return BoundCriterion::kLeaf;
  if (name == "gini") return BoundCriterion::kGini;
  if (name == "mc") return BoundCriterion::kMisclassification;
  if (name == "twoing") return BoundCriterion::kTwoing;
  throw std::invalid_argument("unknown bound criterion '" + std::string(name) +
                              "' (expected leaf, gini, mc, twoing)");
}

Criterion SplitCriterionOf(BoundCriterion c) {
  switch (c) {
    case BoundCriterion::kGini:
      return Criterion::kGini;
    case BoundCriterion::kMisclassification:
      return Criterion::kMisclassification;
    case BoundCriterion::kTwoing:
      return Criterion::kTwoing;
    case BoundCriterion::kLeaf:
      break;
  }
  throw std::invalid_argument("leaf bound has no split criterion");
}

void BoundQuery::Validate() const {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("rho must be in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1)");
  }
  if (!(eta >= 0.0 && eta < 1.0) || eta == 0.5) {
    throw std::invalid_argument("eta must be in [0, 1) and != 0.5");
  }
}

namespace {

double Separation(const BoundQuery& q) {
  const double shrink = 1.0 - 2.0 * q.eta;
  return q.rho * q.rho * shrink * shrink;
}

uint64_t CeilCount(double value) {
  return static_cast<uint64_t>(std::ceil(value));
}

}  // namespace

uint64_t LeafSampleBound(const BoundQuery& q) {
  q.Validate();
  if (q.criterion != BoundCriterion::kLeaf) {
    throw std::invalid_argument("leaf bound needs criterion = leaf");
  }
  if (q.eta >= 0.5) {
    throw std::invalid_argument("majority vote needs eta < 0.5");
  }
  return CeilCount(2.0 / Separation(q) * std::log(1.0 / q.delta));
}

uint64_t SplitSampleBound(const BoundQuery& q) {
  q.Validate();
  const double s = Separation(q);
  switch (q.criterion) {
    case BoundCriterion::kGini:
      return CeilCount(72.0 / s * std::log(12.0 / q.delta));
    case BoundCriterion::kMisclassification:
      return CeilCount(18.0 / s * std::log(12.0 / q.delta));
    case BoundCriterion::kTwoing:
      return CeilCount(2.0 / s * std::log(8.0 / q.delta));
    case BoundCriterion::kLeaf:
      break;
  }
  throw std::invalid_argument("split bound needs gini, mc or twoing");
}

uint64_t SampleBound(const BoundQuery& q) {
  return q.criterion == BoundCriterion::kLeaf ? LeafSampleBound(q)
                                              : SplitSampleBound(q);
}

uint64_t BinomialUpperQuantile(uint64_t trials, double p, double level) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double nt = static_cast<double>(trials);
  double cdf = 0.0;
  for (uint64_t k = 0; k <= trials; ++k) {
    const double kd = static_cast<double>(k);
    const double log_pmf = std::lgamma(nt + 1.0) - std::lgamma(kd + 1.0) -
                           std::lgamma(nt - kd + 1.0) + kd * log_p +
                           (nt - kd) * log_q;
    cdf += std::exp(log_pmf);
    if (cdf >= level) return k;
  }
  return trials;
}

namespace {

MonteCarloResult Summarize(uint64_t n, uint64_t trials,
                           const std::vector<uint8_t>& failed, double delta) {
  MonteCarloResult r;
  r.n = n;
  r.trials = trials;
  for (uint8_t f : failed) r.failures += f;
  r.rate = trials ? static_cast<double>(r.failures) / static_cast<double>(trials)
                  : 0.0;
  r.envelope = BinomialUpperQuantile(trials, delta, 0.99);
  r.dominated = r.failures <= r.envelope;
  return r;
}

// Positive count after flipping `pos` positives and `neg` negatives.
uint64_t NoisyPositives(uint64_t pos, uint64_t neg, double eta, Rng& rng) {
  std::binomial_distribution<uint64_t> keep(pos, 1.0 - eta);
  std::binomial_distribution<uint64_t> turn(neg, eta);
  const uint64_t kept = keep(rng);
  return kept + turn(rng);
}

SplitStats NoisySplit(const SplitStats& s, double eta, Rng& rng) {
  const uint64_t left_pos =
      NoisyPositives(s.n_left_pos, s.n_left - s.n_left_pos, eta, rng);
  const uint64_t right_pos =
      NoisyPositives(s.n_right_pos, s.n_right - s.n_right_pos, eta, rng);
  return SplitStats{s.n,        s.n_left,  s.n_right, left_pos + right_pos,
                    left_pos, right_pos};
}

}  // namespace

MonteCarloResult ValidateLeafBound(const BoundQuery& q, uint64_t trials,
                                   uint64_t seed, size_t threads) {
  const uint64_t n = LeafSampleBound(q);
  const auto n_pos = std::min<uint64_t>(
      n, CeilCount(static_cast<double>(n) * (1.0 + q.rho) / 2.0));
  const uint64_t n_neg = n - n_pos;
  std::vector<uint8_t> failed(trials, 0);
  ParallelFor(trials, threads, [&](size_t t) {
    Rng rng(DeriveSeed(seed, t));
    const uint64_t noisy_pos = NoisyPositives(n_pos, n_neg, q.eta, rng);
    failed[t] = noisy_pos < n - noisy_pos;
  });
  return Summarize(n, trials, failed, q.delta);
}

SplitStats SplitAtSize(uint64_t n, double a, double p_left, double p_right) {
  const auto n_left = static_cast<uint64_t>(std::llround(a * n));
  const uint64_t n_right = n - n_left;
  const auto left_pos = static_cast<uint64_t>(std::llround(p_left * n_left));
  const auto right_pos =
      static_cast<uint64_t>(std::llround(p_right * n_right));
  return SplitStats::FromChildren(n_left, left_pos, n_right, right_pos);
}

MonteCarloResult ValidateSplitBound(const BoundQuery& q, const SplitStats& a,
                                    const SplitStats& b, uint64_t trials,
                                    uint64_t seed, size_t threads) {
  const Criterion criterion = SplitCriterionOf(q.criterion);
  const uint64_t n = SplitSampleBound(q);
  a.Validate();
  b.Validate();
  if (a.n != n || b.n != n) {
    throw std::invalid_argument("split stats must have n = " +
                                std::to_string(n) + " (the sample bound)");
  }
  const double gap = SplitScore(criterion, a) - SplitScore(criterion, b);
  if (gap < q.rho) {
    throw std::invalid_argument("clean score gap " + std::to_string(gap) +
                                " is below rho = " + std::to_string(q.rho));
  }
  std::vector<uint8_t> failed(trials, 0);
  ParallelFor(trials, threads, [&](size_t t) {
    Rng rng(DeriveSeed(seed, t));
    const SplitStats noisy_a = NoisySplit(a, q.eta, rng);
    const SplitStats noisy_b = NoisySplit(b, q.eta, rng);
    failed[t] = !(SplitScore(criterion, noisy_a) > SplitScore(criterion, noisy_b));
  });
  return Summarize(n, trials, failed, q.delta);
}

CounterexampleReport EntropyCounterexample() {
  CounterexampleReport r;
  // n = 1000 realizes the fractions exactly.
  r.f1 = SplitStats::FromChildren(500, 50, 500, 250);
  r.f2 = SplitStats::FromChildren(300, 3, 700, 297);
  const auto f1 = r.f1.Fractions();
  const auto f2 = r.f2.Fractions();
  const auto nf1 = NoisySplitFractions(f1, r.eta);
  const auto nf2 = NoisySplitFractions(f2, r.eta);
  r.entropy_clean_f1 = Gain(ImpurityKind::kEntropy, f1);
  r.entropy_clean_f2 = Gain(ImpurityKind::kEntropy, f2);
  r.entropy_noisy_f1 = Gain(ImpurityKind::kEntropy, nf1);
  r.entropy_noisy_f2 = Gain(ImpurityKind::kEntropy, nf2);
  r.gini_clean_f1 = Gain(ImpurityKind::kGini, f1);
  r.gini_clean_f2 = Gain(ImpurityKind::kGini, f2);
  r.gini_noisy_f1 = Gain(ImpurityKind::kGini, nf1);
  r.gini_noisy_f2 = Gain(ImpurityKind::kGini, nf2);
  return r;
}

}  // namespace noisetree
