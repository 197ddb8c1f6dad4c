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

#include "disco/synth/pdtb.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <json.hpp>

#include "disco/common/io.hpp"
#include "disco/corpus/corpus_io.hpp"

namespace disco::synth {

using nlohmann::json;

std::vector<PdtbRecord> parse_pdtb(std::string_view jsonl) {
  std::vector<PdtbRecord> out;
  std::size_t line_no = 0;
  for (const auto& raw : split(jsonl, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    try {
      const auto obj = json::parse(line);
      PdtbRecord r;
      r.section = obj.at("section").get<int>();
      r.type = obj.at("type").get<std::string>();
      std::transform(r.type.begin(), r.type.end(), r.type.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      r.arg1 = obj.at("arg1").get<std::string>();
      r.arg2 = obj.at("arg2").get<std::string>();
      r.connective = obj.value("connective", "");
      r.label = obj.at("label").get<std::string>();
      r.doc_id = obj.value("doc_id", "");
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw corpus::MalformedRecord(line_no, e.what());
    }
  }
  return out;
}

std::vector<PdtbRecord> read_pdtb(const std::filesystem::path& path) { return parse_pdtb(read_file(path)); }

std::string serialize_pdtb(const std::vector<PdtbRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json obj{{"section", r.section}, {"type", r.type},   {"arg1", r.arg1},    {"arg2", r.arg2},
             {"connective", r.connective}, {"label", r.label}, {"doc_id", r.doc_id}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::optional<Split> pdtb_split(int section) {
  if (section < 0 || section > 24) throw UnknownSectionNumber(section);
  if (section >= 2 && section <= 14) return Split::kTrain;
  if (section >= 15 && section <= 18) return Split::kDev;
  if (section >= 19 && section <= 23) return Split::kTest;
  return std::nullopt;
}

namespace {

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '\'' || u >= 0x80;
}

bool matches_at(std::string_view text, std::size_t pos, std::string_view needle) {
  if (pos + needle.size() > text.size()) return false;
  for (std::size_t i = 0; i < needle.size(); ++i)
    if (lower(text[pos + i]) != lower(needle[i])) return false;
  const bool left_ok = pos == 0 || !is_word_char(text[pos - 1]);
  const auto end = pos + needle.size();
  const bool right_ok = end == text.size() || !is_word_char(text[end]);
  return left_ok && right_ok;
}

std::string collapse_spaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : trim(s)) {
    if (c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

// "Comparison.Contrast.Juxtaposition" -> "Comparison.Contrast"; "" if the
// sense has no second level.
std::string level_two(std::string_view label) {
  const auto parts = split(trim(label), '.');
  if (parts.size() < 2 || parts[0].empty() || parts[1].empty()) return {};
  return parts[0] + "." + parts[1];
}

}  // namespace

std::string remove_connective(std::string_view arg2, std::string_view connective) {
  const auto conn = trim(connective);
  const auto text = trim(arg2);
  if (conn.empty()) return std::string(text);
  std::size_t pos = std::string_view::npos;
  if (matches_at(text, 0, conn)) {
    pos = 0;
  } else {
    for (std::size_t i = 1; i < text.size(); ++i)
      if (matches_at(text, i, conn)) {
        pos = i;
        break;
      }
  }
  if (pos == std::string_view::npos) return std::string(text);
  std::string out(text.substr(0, pos));
  out += ' ';
  out += text.substr(pos + conn.size());
  return collapse_spaces(out);
}

PdtbDatasets adapt_pdtb(const std::vector<PdtbRecord>& records) {
  struct Staged {
    Split split;
    std::string label;
    TaskInstance inst;
  };
  std::map<std::string, std::vector<Staged>> by_type;
  std::map<std::pair<std::string, std::string>, std::size_t> running;  // (task, doc) -> n

  for (const auto& r : records) {
    const auto split = pdtb_split(r.section);
    if (!split) continue;
    if (r.type != "explicit" && r.type != "implicit") continue;
    const auto label = level_two(r.label);
    if (label.empty()) continue;
    const std::string task = r.type == "explicit" ? "pdtb-e" : "pdtb-i";
    TaskInstance inst;
    inst.kind = TaskKind::kPairRelation;
    inst.source_doc_id = r.doc_id.empty() ? "wsj_sec" + std::to_string(r.section) : r.doc_id;
    inst.instance_id = make_instance_id(task, inst.source_doc_id, running[{task, inst.source_doc_id}]++);
    const std::string s2 = r.type == "explicit" ? remove_connective(r.arg2, r.connective) : std::string(trim(r.arg2));
    inst.sentences = {corpus::make_sentence(clean_text(trim(r.arg1))), corpus::make_sentence(clean_text(s2))};
    if (inst.sentences[0].tokens.empty() || inst.sentences[1].tokens.empty()) continue;
    by_type[task].push_back(Staged{*split, label, std::move(inst)});
  }

  auto build = [&](const std::string& task) {
    Dataset ds;
    ds.name = task;
    ds.kind = TaskKind::kPairRelation;
    ds.labels.task = task;
    const auto& staged = by_type[task];
    std::map<std::string, std::size_t> train_counts;
    for (const auto& s : staged)
      if (s.split == Split::kTrain) ++train_counts[s.label];
    for (const auto& [label, n] : train_counts)
      if (n >= kMinLabelCount) ds.labels.names.push_back(label);
    for (const auto& s : staged) {
      const int idx = ds.labels.index_of(s.label);
      if (idx < 0) continue;
      auto inst = s.inst;
      inst.label = idx;
      ds.split(s.split).push_back(std::move(inst));
    }
    return ds;
  };
  return PdtbDatasets{build("pdtb-e"), build("pdtb-i")};
}

}  // namespace disco::synth
