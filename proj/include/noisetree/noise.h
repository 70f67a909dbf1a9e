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

// Label-noise models and injection.

#ifndef NOISETREE_NOISE_H_
#define NOISETREE_NOISE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "noisetree/data.h"

namespace noisetree {

// Every label flipped with the same probability.
struct SymmetricNoise {
  double rate = 0.0;
};

// Flip probability depends on the true class only.
struct ClassConditionalNoise {
  double positive_rate = 0.0;
  double negative_rate = 0.0;
};

// Feature-dependent flip probability from a named parametric family.
// kAffine: rate(x) = clip(params[0] + params[1] * x[0], 0, kMaxRate).
struct NonUniformNoise {
  enum class Family { kAffine };
  static constexpr double kMaxRate = 0.4999;

  Family family = Family::kAffine;
  std::vector<double> params;

  double RateAt(std::span<const double> x) const;
};

using NoiseModel =
    std::variant<SymmetricNoise, ClassConditionalNoise, NonUniformNoise>;

// Throws std::invalid_argument unless every rate is in [0, 1) and the
// family parameters are well formed.
void ValidateNoiseModel(const NoiseModel& model);

// Flip probability for a sample with features x and true label y.
double FlipRate(const NoiseModel& model, std::span<const double> x, Label y);

// Parses `sym:0.3`, `cc:0.4,0.2` or `nu:affine:a,b`.
NoiseModel ParseNoiseModel(std::string_view text);
// Inverse of ParseNoiseModel.
std::string FormatNoiseModel(const NoiseModel& model);

struct NoisyDataset {
  Dataset data;                    // features unchanged, labels corrupted
  std::vector<uint8_t> flip_mask;  // 1 iff the label was flipped
  NoiseModel model;
  uint64_t seed = 0;
};

// Flips each label independently with its model rate. One uniform draw per
// sample, taken in sample order from a single stream seeded by `seed`, so
// appending samples leaves earlier flips unchanged.
NoisyDataset InjectNoise(const Dataset& ds, const NoiseModel& model,
                         uint64_t seed);

// Large-sample positive fraction after symmetric noise: p(1-2 eta) + eta.
double ExpectedNoisyFraction(double p, double eta);

}  // namespace noisetree

#endif  // NOISETREE_NOISE_H_
