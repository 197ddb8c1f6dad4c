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

#ifndef DISCO_SYNTH_PDTB_HPP_
#define DISCO_SYNTH_PDTB_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disco/synth/task_instance.hpp"

namespace disco::synth {

// One annotated relation from the PDTB, flattened into the JSONL fixture
// schema {"section","type","arg1","arg2","connective","label","doc_id"}.
// "label" is the sense path ("Comparison.Contrast[.x]"); only its first two
// levels are used.
struct PdtbRecord {
  int section = 0;
  std::string type;  // "explicit" | "implicit" (others are ignored)
  std::string arg1;
  std::string arg2;
  std::string connective;
  std::string label;
  std::string doc_id;
};

class UnknownSectionNumber : public ValidationError {
 public:
  explicit UnknownSectionNumber(int section)
      : ValidationError("unknown PDTB section number: " + std::to_string(section)), section_(section) {}
  int section() const { return section_; }

 private:
  int section_;
};

std::vector<PdtbRecord> parse_pdtb(std::string_view jsonl);
std::vector<PdtbRecord> read_pdtb(const std::filesystem::path& path);
std::string serialize_pdtb(const std::vector<PdtbRecord>& records);

// Sections 2-14 train, 15-18 dev, 19-23 test; other WSJ sections (0, 1, 24)
// are not used. Throws UnknownSectionNumber outside 0..24.
std::optional<Split> pdtb_split(int section);

// Removes the explicit connective from arg2: the prefix occurrence when arg2
// starts with it, otherwise the first whole-word occurrence.
std::string remove_connective(std::string_view arg2, std::string_view connective);

inline constexpr std::size_t kMinLabelCount = 10;

struct PdtbDatasets {
  Dataset explicit_rel;  // "pdtb-e"
  Dataset implicit_rel;  // "pdtb-i"
};

// Labels with fewer than kMinLabelCount training instances are removed from
// every split; each relation type gets its own label space.
PdtbDatasets adapt_pdtb(const std::vector<PdtbRecord>& records);

}  // namespace disco::synth

#endif  // DISCO_SYNTH_PDTB_HPP_
