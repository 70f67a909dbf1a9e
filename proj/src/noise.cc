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

#include "noisetree/noise.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "noisetree/random.h"

namespace noisetree {
namespace {

void CheckRate(double rate, const char* what) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw std::invalid_argument(std::string(what) + " must be in [0, 1), got " +
                                FormatDouble(rate));
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> ParseList(std::string_view text) {
  std::vector<double> values;
  size_t start = 0;
  while (true) {
    size_t comma = text.find(',', start);
    values.push_back(ParseDouble(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace

double NonUniformNoise::RateAt(std::span<const double> x) const {
  switch (family) {
    case Family::kAffine:
      return std::clamp(params[0] + params[1] * x[0], 0.0, kMaxRate);
  }
  return 0.0;
}

void ValidateNoiseModel(const NoiseModel& model) {
  std::visit(Overloaded{
                 [](const SymmetricNoise& m) { CheckRate(m.rate, "noise rate"); },
                 [](const ClassConditionalNoise& m) {
                   CheckRate(m.positive_rate, "positive-class noise rate");
                   CheckRate(m.negative_rate, "negative-class noise rate");
                 },
                 [](const NonUniformNoise& m) {
                   if (m.family == NonUniformNoise::Family::kAffine &&
                       m.params.size() != 2) {
                     throw std::invalid_argument(
                         "affine noise family takes 2 parameters");
                   }
                 },
             },
             model);
}

double FlipRate(const NoiseModel& model, std::span<const double> x, Label y) {
  return std::visit(
      Overloaded{
          [](const SymmetricNoise& m) { return m.rate; },
          [y](const ClassConditionalNoise& m) {
            return y == Label::kPositive ? m.positive_rate : m.negative_rate;
          },
          [x](const NonUniformNoise& m) { return m.RateAt(x); },
      },
      model);
}

NoiseModel ParseNoiseModel(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("bad noise model '" + std::string(text) +
                                 "': " + why);
  };
  size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw fail("missing ':'");
  std::string_view kind = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);
  NoiseModel model;
  try {
    if (kind == "sym") {
      auto v = ParseList(rest);
      if (v.size() != 1) throw fail("sym takes one rate");
      model = SymmetricNoise{v[0]};
    } else if (kind == "cc") {
      auto v = ParseList(rest);
      if (v.size() != 2) throw fail("cc takes two rates");
      model = ClassConditionalNoise{v[0], v[1]};
    } else if (kind == "nu") {
      size_t c2 = rest.find(':');
      if (c2 == std::string_view::npos || rest.substr(0, c2) != "affine") {
        throw fail("only the 'affine' family is supported");
      }
      auto v = ParseList(rest.substr(c2 + 1));
      if (v.size() != 2) throw fail("affine takes two parameters");
      model = NonUniformNoise{NonUniformNoise::Family::kAffine, v};
    } else {
      throw fail("unknown kind (expected sym, cc or nu)");
    }
  } catch (const std::invalid_argument& e) {
    if (std::string_view(e.what()).starts_with("bad noise model")) throw;
    throw fail(e.what());
  }
  ValidateNoiseModel(model);
  return model;
}

std::string FormatNoiseModel(const NoiseModel& model) {
  return std::visit(
      Overloaded{
          [](const SymmetricNoise& m) { return "sym:" + FormatDouble(m.rate); },
          [](const ClassConditionalNoise& m) {
            return "cc:" + FormatDouble(m.positive_rate) + "," +
                   FormatDouble(m.negative_rate);
          },
          [](const NonUniformNoise& m) {
            return "nu:affine:" + FormatDouble(m.params[0]) + "," +
                   FormatDouble(m.params[1]);
          },
      },
      model);
}

NoisyDataset InjectNoise(const Dataset& ds, const NoiseModel& model,
                         uint64_t seed) {
  ValidateNoiseModel(model);
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Label> labels(ds.labels());
  std::vector<uint8_t> mask(ds.size(), 0);
  for (size_t i = 0; i < ds.size(); ++i) {
    const double u = unit(rng);
    if (u < FlipRate(model, ds.row(i), labels[i])) {
      labels[i] = Flip(labels[i]);
      mask[i] = 1;
    }
  }
  return NoisyDataset{ds.WithLabels(std::move(labels)), std::move(mask), model,
                      seed};
}

double ExpectedNoisyFraction(double p, double eta) {
  return p * (1.0 - 2.0 * eta) + eta;
}

}  // namespace noisetree
