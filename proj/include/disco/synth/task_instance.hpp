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

#ifndef DISCO_SYNTH_TASK_INSTANCE_HPP_
#define DISCO_SYNTH_TASK_INSTANCE_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "disco/common/error.hpp"
#include "disco/corpus/document.hpp"

namespace disco::synth {

using corpus::Sentence;

enum class TaskKind { kSentencePosition, kBinaryOrdering, kCoherence, kSectionPrediction, kPairRelation, kRstNode };

// Sentences per instance; 0 for RST nodes whose EDU lists vary.
std::size_t arity(TaskKind kind);
std::string_view kind_name(TaskKind kind);

// Dataset names are "<task>" or "<task>_<domain>"; the task part selects
// the kind: sp, bso, dc, ssp, pdtb-e, pdtb-i, rst.
std::string base_task(std::string_view dataset_name);
std::optional<TaskKind> kind_for_task(std::string_view task);

enum class Split { kTrain, kDev, kTest };
inline constexpr std::array<Split, 3> kSplits{Split::kTrain, Split::kDev, Split::kTest};
std::string_view split_name(Split s);

struct TaskInstance {
  TaskKind kind = TaskKind::kSentencePosition;
  std::string instance_id;  // "<dataset>/<source_doc_id>#<n>"
  std::string source_doc_id;
  int label = 0;
  // Ordered slots. For RST nodes: left EDUs followed by right EDUs.
  std::vector<Sentence> sentences;
  std::size_t left_count = 0;  // RST nodes only
  int replaced_slot = 0;       // coherence negatives: 1-based replaced position
  std::string distractor_source;

  bool operator==(const TaskInstance&) const = default;
};

std::string make_instance_id(std::string_view dataset, std::string_view doc_id, std::size_t n);
// Inverse of make_instance_id for the document part.
std::string doc_id_of(std::string_view instance_id);

struct LabelSpace {
  std::string task;
  std::vector<std::string> names;

  std::size_t size() const { return names.size(); }
  int index_of(std::string_view name) const;  // -1 when absent
  bool operator==(const LabelSpace&) const = default;
};

LabelSpace binary_labels(std::string task, std::string negative, std::string positive);
LabelSpace position_labels(std::string task);

struct Dataset {
  std::string name;
  TaskKind kind = TaskKind::kSentencePosition;
  LabelSpace labels;
  std::vector<TaskInstance> train;
  std::vector<TaskInstance> dev;
  std::vector<TaskInstance> test;

  std::vector<TaskInstance>& split(Split s);
  const std::vector<TaskInstance>& split(Split s) const;
  std::set<std::string> doc_ids(Split s) const;

  bool operator==(const Dataset&) const = default;
};

// Throws if any two splits share a source document.
void check_disjoint(const Dataset& ds);

// Replaces tab/newline characters so raw text fits in one TSV field.
std::string clean_text(std::string_view raw);

class InsufficientDocuments : public RuntimeError {
 public:
  InsufficientDocuments(std::size_t needed, std::size_t available)
      : RuntimeError("insufficient documents: need " + std::to_string(needed) + " instances, " +
                     std::to_string(available) + " available"),
        needed_(needed),
        available_(available) {}
  std::size_t needed() const { return needed_; }
  std::size_t available() const { return available_; }

 private:
  std::size_t needed_;
  std::size_t available_;
};

}  // namespace disco::synth

#endif  // DISCO_SYNTH_TASK_INSTANCE_HPP_
