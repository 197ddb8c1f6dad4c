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

#ifndef DISCO_SYNTH_RST_HPP_
#define DISCO_SYNTH_RST_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "disco/synth/task_instance.hpp"

namespace disco::synth {

// The 18 coarse-grained RST-DT relation classes.
inline constexpr std::array<std::string_view, 18> kRstRelations{
    "Attribution", "Background",  "Cause",        "Comparison", "Condition", "Contrast",
    "Elaboration", "Enablement",  "Evaluation",   "Explanation", "Joint",    "Manner-Means",
    "Same-unit",   "Summary",     "Temporal",     "Textual-organization", "Topic-Change", "Topic-Comment"};

// Canonical spelling of a coarse relation (case-insensitive), or "" if it is
// not one of the 18 classes.
std::string canonical_relation(std::string_view name);

// Discourse tree node. A leaf has edu > 0 (1-based) and no children. An
// internal node carries a relation and one nuclearity mark (N or S) per child.
struct RstTree {
  int edu = 0;
  std::string relation;
  std::string nuclearity;
  std::vector<RstTree> children;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const RstTree&) const = default;
};

class UnaryNode : public ValidationError {
 public:
  UnaryNode() : ValidationError("RST internal node with a single child") {}
};

class EmptySpan : public ValidationError {
 public:
  EmptySpan() : ValidationError("RST subtree spans no EDUs") {}
};

// In-order EDU indices.
std::vector<int> leaves(const RstTree& tree);
std::size_t internal_node_count(const RstTree& tree);

// Right-branching: (c1, ..., cn) -> (c1, (c2, ..., cn)). Synthetic inner
// nodes keep the relation and the nuclearity marks of the children they
// cover; the outer node marks the inner node N if any covered child is N.
RstTree binarize_rst(const RstTree& tree);

enum class RstLabelMode { kRelation, kNuclearityRelation };

struct RstNodeSpan {
  std::vector<int> left;   // EDU indices, 1-based
  std::vector<int> right;
  std::string label;       // "Attribution" or "NN-Attribution"
};

// One entry per internal node of a binary tree, in pre-order.
std::vector<RstNodeSpan> extract_rst_spans(const RstTree& binary_tree, RstLabelMode mode);

struct RstDocument {
  std::string doc_id;
  std::string split;  // "train" | "test"
  std::vector<std::string> edus;
  RstTree tree;
};

std::vector<RstDocument> parse_rst(std::string_view jsonl);
std::vector<RstDocument> read_rst(const std::filesystem::path& path);
std::string serialize_rst(const std::vector<RstDocument>& docs);

// Instances for one binarized document; labels are left unresolved (-1)
// and the label strings are returned alongside in the same order.
std::vector<TaskInstance> extract_rst_instances(const RstDocument& doc, RstLabelMode mode,
                                                std::vector<std::string>& labels_out);

// Train documents listed in dev_docs move to dev. The label space is the
// sorted set of training labels; nodes with other labels are dropped.
Dataset adapt_rst(const std::vector<RstDocument>& docs, const std::set<std::string>& dev_docs, RstLabelMode mode);

}  // namespace disco::synth

#endif  // DISCO_SYNTH_RST_HPP_
