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

#include "disco/synth/task_instance.hpp"

#include <algorithm>

namespace disco::synth {

std::size_t arity(TaskKind kind) {
  switch (kind) {
    case TaskKind::kSentencePosition: return 5;
    case TaskKind::kBinaryOrdering: return 2;
    case TaskKind::kCoherence: return 6;
    case TaskKind::kSectionPrediction: return 1;
    case TaskKind::kPairRelation: return 2;
    case TaskKind::kRstNode: return 0;
  }
  return 0;
}

std::string_view kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::kSentencePosition: return "SP";
    case TaskKind::kBinaryOrdering: return "BSO";
    case TaskKind::kCoherence: return "DC";
    case TaskKind::kSectionPrediction: return "SSP";
    case TaskKind::kPairRelation: return "PairRel";
    case TaskKind::kRstNode: return "RSTNode";
  }
  return "?";
}

std::string base_task(std::string_view dataset_name) {
  const auto pos = dataset_name.find('_');
  return std::string(pos == std::string_view::npos ? dataset_name : dataset_name.substr(0, pos));
}

std::optional<TaskKind> kind_for_task(std::string_view task) {
  if (task == "sp") return TaskKind::kSentencePosition;
  if (task == "bso") return TaskKind::kBinaryOrdering;
  if (task == "dc") return TaskKind::kCoherence;
  if (task == "ssp") return TaskKind::kSectionPrediction;
  if (task == "pdtb-e" || task == "pdtb-i") return TaskKind::kPairRelation;
  if (task == "rst") return TaskKind::kRstNode;
  return std::nullopt;
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "?";
}

std::string make_instance_id(std::string_view dataset, std::string_view doc_id, std::size_t n) {
  std::string id(dataset);
  id += '/';
  id += doc_id;
  id += '#';
  id += std::to_string(n);
  return id;
}

std::string doc_id_of(std::string_view instance_id) {
  const auto slash = instance_id.find('/');
  const auto hash = instance_id.rfind('#');
  const auto begin = slash == std::string_view::npos ? 0 : slash + 1;
  const auto end = hash == std::string_view::npos || hash < begin ? instance_id.size() : hash;
  return std::string(instance_id.substr(begin, end - begin));
}

int LabelSpace::index_of(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

LabelSpace binary_labels(std::string task, std::string negative, std::string positive) {
  return LabelSpace{std::move(task), {std::move(negative), std::move(positive)}};
}

LabelSpace position_labels(std::string task) { return LabelSpace{std::move(task), {"0", "1", "2", "3", "4"}}; }

std::vector<TaskInstance>& Dataset::split(Split s) {
  switch (s) {
    case Split::kTrain: return train;
    case Split::kDev: return dev;
    case Split::kTest: return test;
  }
  return train;
}

const std::vector<TaskInstance>& Dataset::split(Split s) const {
  return const_cast<Dataset&>(*this).split(s);
}

std::set<std::string> Dataset::doc_ids(Split s) const {
  std::set<std::string> ids;
  for (const auto& inst : split(s)) ids.insert(inst.source_doc_id);
  return ids;
}

void check_disjoint(const Dataset& ds) {
  const auto tr = ds.doc_ids(Split::kTrain);
  const auto dv = ds.doc_ids(Split::kDev);
  const auto te = ds.doc_ids(Split::kTest);
  auto overlap = [](const std::set<std::string>& a, const std::set<std::string>& b) -> std::string {
    for (const auto& x : a)
      if (b.count(x)) return x;
    return {};
  };
  for (const auto& [a, b] : {std::pair{&tr, &dv}, std::pair{&tr, &te}, std::pair{&dv, &te}}) {
    const auto shared = overlap(*a, *b);
    if (!shared.empty()) throw RuntimeError("document " + shared + " appears in more than one split of " + ds.name);
  }
}

std::string clean_text(std::string_view raw) {
  std::string out(raw);
  for (auto& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

}  // namespace disco::synth
