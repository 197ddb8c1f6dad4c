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

#ifndef DISCO_CORPUS_TOKENIZE_HPP_
#define DISCO_CORPUS_TOKENIZE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace disco::corpus {

// Lowercases ASCII, splits on whitespace, and peels leading/trailing ASCII
// punctuation off each word as single-character tokens. Inner punctuation
// ("ec's", "3.5") stays attached. tokenize(join(tokenize(x))) == tokenize(x).
std::vector<std::string> tokenize(std::string_view raw);

}  // namespace disco::corpus

#endif  // DISCO_CORPUS_TOKENIZE_HPP_
