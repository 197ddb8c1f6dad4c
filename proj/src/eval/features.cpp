// Copyright 2026 The discoprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "disco/eval/features.hpp"

namespace disco::eval {

std::string_view construction_name(Construction c) {
  switch (c) {
    case Construction::kPair4: return "pair4";
    case Construction::kSp5: return "sp5";
    case Construction::kBso3: return "bso3";
    case Construction::kConcat6: return "concat6";
    case Construction::kSingle: return "single";
    case Construction::kSp1: return "sp1";
  }
  return "?";
}

std::optional<Construction> parse_construction(std::string_view name) {
  for (auto c : {Construction::kPair4, Construction::kSp5, Construction::kBso3, Construction::kConcat6,
                 Construction::kSingle, Construction::kSp1})
    if (construction_name(c) == name) return c;
  return std::nullopt;
}

std::size_t input_arity(Construction c) {
  switch (c) {
    case Construction::kPair4: return 2;
    case Construction::kSp5: return 5;
    case Construction::kBso3: return 2;
    case Construction::kConcat6: return 6;
    case Construction::kSingle: return 1;
    case Construction::kSp1: return 5;
  }
  return 0;
}

long feature_multiple(Construction c) {
  switch (c) {
    case Construction::kPair4: return 4;
    case Construction::kSp5: return 5;
    case Construction::kBso3: return 3;
    case Construction::kConcat6: return 6;
    case Construction::kSingle: return 1;
    case Construction::kSp1: return 1;
  }
  return 0;
}

Construction default_construction(synth::TaskKind kind) {
  switch (kind) {
    case synth::TaskKind::kSentencePosition: return Construction::kSp5;
    case synth::TaskKind::kBinaryOrdering: return Construction::kBso3;
    case synth::TaskKind::kCoherence: return Construction::kConcat6;
    case synth::TaskKind::kSectionPrediction: return Construction::kSingle;
    case synth::TaskKind::kPairRelation: return Construction::kPair4;
    case synth::TaskKind::kRstNode: return Construction::kPair4;
  }
  return Construction::kSingle;
}

Vector<float> build_features(const Bundle& x, Construction c) {
  if (x.size() != input_arity(c)) throw WrongArity(c, x.size());
  const long d = x[0].size();
  for (const auto& v : x)
    if (v.size() != d) throw nn::DimMismatch("feature inputs differ in dimension");
  Vector<float> f(d * feature_multiple(c));
  switch (c) {
    case Construction::kPair4:
      f << x[0], x[1], x[0].cwiseProduct(x[1]), (x[0] - x[1]).cwiseAbs();
      break;
    case Construction::kSp5:
      f << x[0], x[0] - x[1], x[0] - x[2], x[0] - x[3], x[0] - x[4];
      break;
    case Construction::kBso3:
      f << x[0], x[1], x[0] - x[1];
      break;
    case Construction::kConcat6:
      for (long i = 0; i < 6; ++i) f.segment(i * d, d) = x[static_cast<std::size_t>(i)];
      break;
    case Construction::kSingle:
    case Construction::kSp1:
      f = x[0];
      break;
  }
  return f;
}

nn::Batch<float> feature_matrix(const std::vector<Bundle>& bundles, Construction c) {
  if (bundles.empty()) return {};
  const Vector<float> first = build_features(bundles[0], c);
  nn::Batch<float> out(first.size(), static_cast<long>(bundles.size()));
  out.col(0) = first;
  for (std::size_t i = 1; i < bundles.size(); ++i) {
    const Vector<float> f = build_features(bundles[i], c);
    if (f.size() != out.rows()) throw nn::DimMismatch("instances differ in embedding dimension");
    out.col(static_cast<long>(i)) = f;
  }
  return out;
}

}  // namespace disco::eval
