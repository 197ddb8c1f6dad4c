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

#ifndef DISCO_EVAL_FEATURES_HPP_
#define DISCO_EVAL_FEATURES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disco/eval/embedding_source.hpp"

namespace disco::eval {

// pair4  [x1, x2, x1*x2, |x1-x2|]
// sp5    [x1, x1-x2, x1-x3, x1-x4, x1-x5]
// bso3   [x1, x2, x1-x2]
// concat6 [x1 .. x6]
// single [x]
// sp1    [x1] of a five-sentence instance (no context)
enum class Construction { kPair4, kSp5, kBso3, kConcat6, kSingle, kSp1 };

std::string_view construction_name(Construction c);
std::optional<Construction> parse_construction(std::string_view name);
std::size_t input_arity(Construction c);
long feature_multiple(Construction c);
Construction default_construction(synth::TaskKind kind);

class WrongArity : public ValidationError {
 public:
  WrongArity(Construction c, std::size_t got)
      : ValidationError(std::string(construction_name(c)) + " needs " + std::to_string(input_arity(c)) +
                        " vectors, got " + std::to_string(got)) {}
};

Vector<float> build_features(const Bundle& x, Construction c);

// Features of every bundle as the columns of a matrix.
nn::Batch<float> feature_matrix(const std::vector<Bundle>& bundles, Construction c);

}  // namespace disco::eval

#endif  // DISCO_EVAL_FEATURES_HPP_
