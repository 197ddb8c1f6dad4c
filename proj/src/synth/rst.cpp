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

#include "disco/synth/rst.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <json.hpp>

#include "disco/common/io.hpp"
#include "disco/corpus/corpus_io.hpp"
#include "disco/synth/synthesizers.hpp"

namespace disco::synth {

using nlohmann::json;

std::string canonical_relation(std::string_view name) {
  auto eq = [](std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
             return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
  };
  for (auto r : kRstRelations)
    if (eq(r, trim(name))) return std::string(r);
  return {};
}

namespace {

void collect_leaves(const RstTree& t, std::vector<int>& out) {
  if (t.is_leaf()) {
    out.push_back(t.edu);
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

void validate_node(const RstTree& t) {
  if (t.is_leaf()) return;
  if (t.children.size() == 1) throw UnaryNode();
  if (t.nuclearity.size() != t.children.size())
    throw ValidationError("nuclearity '" + t.nuclearity + "' does not match " + std::to_string(t.children.size()) +
                          " children");
  for (char c : t.nuclearity)
    if (c != 'N' && c != 'S') throw ValidationError("nuclearity marks must be N or S: " + t.nuclearity);
}

RstTree binarize_range(const RstTree& node, std::size_t first) {
  const std::size_t n = node.children.size() - first;
  RstTree out;
  out.relation = node.relation;
  if (n == 2) {
    out.nuclearity = node.nuclearity.substr(first, 2);
    out.children = {binarize_rst(node.children[first]), binarize_rst(node.children[first + 1])};
    return out;
  }
  const auto rest = node.nuclearity.substr(first + 1);
  const char inner_mark = rest.find('N') != std::string::npos ? 'N' : 'S';
  out.nuclearity = std::string{node.nuclearity[first], inner_mark};
  out.children = {binarize_rst(node.children[first]), binarize_range(node, first + 1)};
  return out;
}

void extract(const RstTree& t, RstLabelMode mode, std::vector<RstNodeSpan>& out) {
  if (t.is_leaf()) return;
  RstNodeSpan span;
  collect_leaves(t.children[0], span.left);
  collect_leaves(t.children[1], span.right);
  if (span.left.empty() || span.right.empty()) throw EmptySpan();
  span.label = mode == RstLabelMode::kRelation ? t.relation : t.nuclearity + "-" + t.relation;
  out.push_back(std::move(span));
  extract(t.children[0], mode, out);
  extract(t.children[1], mode, out);
}

RstTree tree_from_json(const json& j) {
  RstTree t;
  if (j.contains("edu")) {
    t.edu = j.at("edu").get<int>();
    if (t.edu < 1) throw ValidationError("EDU indices are 1-based");
    return t;
  }
  const auto rel = canonical_relation(j.at("relation").get<std::string>());
  if (rel.empty()) throw ValidationError("unknown RST relation: " + j.at("relation").get<std::string>());
  t.relation = rel;
  t.nuclearity = j.at("nuclearity").get<std::string>();
  for (const auto& c : j.at("children")) t.children.push_back(tree_from_json(c));
  if (t.children.empty()) throw ValidationError("internal RST node without children");
  validate_node(t);
  return t;
}

json tree_to_json(const RstTree& t) {
  if (t.is_leaf()) return json{{"edu", t.edu}};
  json children = json::array();
  for (const auto& c : t.children) children.push_back(tree_to_json(c));
  return json{{"relation", t.relation}, {"nuclearity", t.nuclearity}, {"children", std::move(children)}};
}

}  // namespace

std::vector<int> leaves(const RstTree& tree) {
  std::vector<int> out;
  collect_leaves(tree, out);
  return out;
}

std::size_t internal_node_count(const RstTree& tree) {
  if (tree.is_leaf()) return 0;
  std::size_t n = 1;
  for (const auto& c : tree.children) n += internal_node_count(c);
  return n;
}

RstTree binarize_rst(const RstTree& tree) {
  if (tree.is_leaf()) return tree;
  validate_node(tree);
  return binarize_range(tree, 0);
}

std::vector<RstNodeSpan> extract_rst_spans(const RstTree& binary_tree, RstLabelMode mode) {
  std::vector<RstNodeSpan> out;
  extract(binary_tree, mode, out);
  return out;
}

std::vector<RstDocument> parse_rst(std::string_view jsonl) {
  std::vector<RstDocument> out;
  std::size_t line_no = 0;
  for (const auto& raw : split(jsonl, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    RstDocument doc;
    try {
      const auto obj = json::parse(line);
      doc.doc_id = obj.at("doc_id").get<std::string>();
      doc.split = obj.value("split", "train");
      doc.edus = obj.at("edus").get<std::vector<std::string>>();
      doc.tree = tree_from_json(obj.at("tree"));
    } catch (const json::exception& e) {
      throw corpus::MalformedRecord(line_no, e.what());
    }
    if (doc.split != "train" && doc.split != "test")
      throw corpus::MalformedRecord(line_no, "split must be train or test");
    const auto lv = leaves(doc.tree);
    for (std::size_t i = 0; i < lv.size(); ++i)
      if (lv[i] != static_cast<int>(i) + 1 || lv.size() != doc.edus.size())
        throw corpus::MalformedRecord(line_no, "tree leaves must be EDUs 1..n in order");
    out.push_back(std::move(doc));
  }
  return out;
}

std::vector<RstDocument> read_rst(const std::filesystem::path& path) { return parse_rst(read_file(path)); }

std::string serialize_rst(const std::vector<RstDocument>& docs) {
  std::string out;
  for (const auto& d : docs) {
    json obj{{"doc_id", d.doc_id}, {"split", d.split}, {"edus", d.edus}, {"tree", tree_to_json(d.tree)}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<TaskInstance> extract_rst_instances(const RstDocument& doc, RstLabelMode mode,
                                                std::vector<std::string>& labels_out) {
  const auto spans = extract_rst_spans(binarize_rst(doc.tree), mode);
  std::vector<TaskInstance> out;
  auto edu = [&](int i) {
    auto text = clean_text(doc.edus.at(static_cast<std::size_t>(i - 1)));
    // " ||| " separates EDUs in the dataset files.
    for (auto pos = text.find("|||"); pos != std::string::npos; pos = text.find("|||", pos)) text.replace(pos, 3, "| |");
    return corpus::make_sentence(std::move(text));
  };
  for (std::size_t k = 0; k < spans.size(); ++k) {
    TaskInstance inst;
    inst.kind = TaskKind::kRstNode;
    inst.source_doc_id = doc.doc_id;
    inst.instance_id = make_instance_id("rst", doc.doc_id, k);
    inst.label = -1;
    for (int i : spans[k].left) inst.sentences.push_back(edu(i));
    inst.left_count = spans[k].left.size();
    for (int i : spans[k].right) inst.sentences.push_back(edu(i));
    labels_out.push_back(spans[k].label);
    out.push_back(std::move(inst));
  }
  return out;
}

Dataset adapt_rst(const std::vector<RstDocument>& docs, const std::set<std::string>& dev_docs, RstLabelMode mode) {
  std::vector<TaskInstance> all;
  std::vector<std::string> labels;
  std::map<std::string, Split> assignment;
  for (const auto& d : docs) {
    auto inst = extract_rst_instances(d, mode, labels);
    all.insert(all.end(), std::make_move_iterator(inst.begin()), std::make_move_iterator(inst.end()));
    const Split s = d.split == "test" ? Split::kTest : dev_docs.count(d.doc_id) ? Split::kDev : Split::kTrain;
    if (!assignment.emplace(d.doc_id, s).second) throw corpus::DuplicateId(d.doc_id);
  }
  for (const auto& id : dev_docs)
    if (!assignment.count(id)) throw ValidationError("dev document not in RST corpus: " + id);

  std::set<std::string> train_labels;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (assignment.at(all[i].source_doc_id) == Split::kTrain) train_labels.insert(labels[i]);
  LabelSpace space{"rst", std::vector<std::string>(train_labels.begin(), train_labels.end())};

  std::vector<TaskInstance> kept;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int idx = space.index_of(labels[i]);
    if (idx < 0) continue;
    all[i].label = idx;
    kept.push_back(std::move(all[i]));
  }
  return split_by_document("rst", TaskKind::kRstNode, std::move(space), std::move(kept), assignment);
}

}  // namespace disco::synth
