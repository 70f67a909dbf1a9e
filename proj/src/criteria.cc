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

#include "noisetree/criteria.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noisetree/noise.h"

namespace noisetree {
namespace {

void RequireNonDegenerate(uint64_t n_left, uint64_t n_right) {
  if (n_left == 0 || n_right == 0) {
    throw std::invalid_argument("degenerate split: a child is empty");
  }
}

double Ratio(uint64_t num, uint64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::optional<ImpurityKind> ImpurityOf(Criterion c) {
  switch (c) {
    case Criterion::kGini:
      return ImpurityKind::kGini;
    case Criterion::kEntropy:
      return ImpurityKind::kEntropy;
    case Criterion::kMisclassification:
      return ImpurityKind::kMisclassification;
    case Criterion::kTwoing:
      return std::nullopt;
  }
  return std::nullopt;
}

Criterion ParseCriterion(std::string_view name) {
  if (name == "gini") return Criterion::kGini;
  if (name == "entropy") return Criterion::kEntropy;
  if (name == "mc") return Criterion::kMisclassification;
  if (name == "twoing") return Criterion::kTwoing;
  throw std::invalid_argument("unknown criterion '" + std::string(name) +
                              "' (expected gini, entropy, mc, twoing)");
}

std::string CriterionName(Criterion c) {
  switch (c) {
    case Criterion::kGini:
      return "gini";
    case Criterion::kEntropy:
      return "entropy";
    case Criterion::kMisclassification:
      return "mc";
    case Criterion::kTwoing:
      return "twoing";
  }
  return "?";
}

SplitStats SplitStats::FromChildren(uint64_t n_left, uint64_t n_left_pos,
                                    uint64_t n_right, uint64_t n_right_pos) {
  SplitStats s{n_left + n_right, n_left,     n_right,
               n_left_pos + n_right_pos, n_left_pos, n_right_pos};
  s.Validate();
  return s;
}

void SplitStats::Validate() const {
  if (n != n_left + n_right || n_pos != n_left_pos + n_right_pos ||
      n_left_pos > n_left || n_right_pos > n_right) {
    throw std::invalid_argument("inconsistent split counts");
  }
}

SplitFractions SplitStats::Fractions() const {
  RequireNonDegenerate(n_left, n_right);
  return SplitFractions{n,
                        n_left,
                        n_right,
                        Ratio(n_left, n),
                        Ratio(n_pos, n),
                        Ratio(n_left_pos, n_left),
                        Ratio(n_right_pos, n_right)};
}

double Impurity(ImpurityKind kind, double p) {
  const double q = 1.0 - p;
  switch (kind) {
    case ImpurityKind::kGini:
      return 2.0 * p * q;
    case ImpurityKind::kEntropy: {
      auto term = [](double v) { return v > 0.0 ? -v * std::log2(v) : 0.0; };
      return term(p) + term(q);
    }
    case ImpurityKind::kMisclassification:
      return std::min(p, q);
  }
  return 0.0;
}

double Gain(ImpurityKind kind, const SplitFractions& s) {
  RequireNonDegenerate(s.n_left, s.n_right);
  return Impurity(kind, s.p) - s.a * Impurity(kind, s.p_left) -
         (1.0 - s.a) * Impurity(kind, s.p_right);
}

double Gain(ImpurityKind kind, const SplitStats& s) {
  return Gain(kind, s.Fractions());
}

double Twoing(const SplitFractions& s) {
  RequireNonDegenerate(s.n_left, s.n_right);
  const double d = s.p_left - s.p_right;
  return s.a * (1.0 - s.a) * d * d;
}

double Twoing(const SplitStats& s) { return Twoing(s.Fractions()); }

double SplitScore(Criterion c, const SplitFractions& s) {
  if (auto kind = ImpurityOf(c)) return Gain(*kind, s);
  return Twoing(s);
}

double SplitScore(Criterion c, const SplitStats& s) {
  return SplitScore(c, s.Fractions());
}

SplitFractions NoisySplitFractions(const SplitFractions& s, double eta) {
  SplitFractions out = s;
  out.p = ExpectedNoisyFraction(s.p, eta);
  out.p_left = ExpectedNoisyFraction(s.p_left, eta);
  out.p_right = ExpectedNoisyFraction(s.p_right, eta);
  return out;
}

SplitFractions NoisySplitFractions(const SplitStats& s, double eta) {
  return NoisySplitFractions(s.Fractions(), eta);
}

double NoisyGainClosedForm(Criterion c, double clean_value, double eta) {
  if (eta == 0.5) {
    throw std::invalid_argument("noise rate 0.5 erases all label information");
  }
  const double shrink = 1.0 - 2.0 * eta;
  switch (c) {
    case Criterion::kGini:
    case Criterion::kTwoing:
      return shrink * shrink * clean_value;
    case Criterion::kMisclassification:
      return std::abs(shrink) * clean_value;
    case Criterion::kEntropy:
      throw std::invalid_argument(
          "entropy gain has no closed-form noisy scaling; its split ordering "
          "can change under symmetric noise");
  }
  return 0.0;
}

}  // namespace noisetree
