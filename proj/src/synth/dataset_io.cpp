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

#include "disco/synth/dataset_io.hpp"

#include <charconv>
#include <fstream>

#include "disco/common/io.hpp"

namespace disco::synth {

namespace fs = std::filesystem;

std::string format_row(const TaskInstance& inst) {
  std::string row = std::to_string(inst.label);
  if (inst.kind == TaskKind::kRstNode) {
    std::vector<std::string> left;
    std::vector<std::string> right;
    for (std::size_t i = 0; i < inst.sentences.size(); ++i)
      (i < inst.left_count ? left : right).push_back(inst.sentences[i].raw);
    row += '\t';
    row += join(left, kEduSeparator);
    row += '\t';
    row += join(right, kEduSeparator);
    return row;
  }
  for (const auto& s : inst.sentences) {
    row += '\t';
    row += s.raw;
  }
  return row;
}

namespace {

int parse_label(std::string_view s, std::size_t line_no) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) throw MalformedRow(line_no, "bad label '" + std::string(s) + "'");
  return v;
}

corpus::Sentence nonempty_sentence(const std::string& raw, std::size_t line_no) {
  auto s = corpus::make_sentence(raw);
  if (s.tokens.empty()) throw MalformedRow(line_no, "empty sentence field");
  return s;
}

}  // namespace

TaskInstance parse_row(std::string_view line, TaskKind kind, std::size_t line_no) {
  const auto cols = split(line, '\t');
  TaskInstance inst;
  inst.kind = kind;
  if (kind == TaskKind::kRstNode) {
    if (cols.size() != 3) throw MalformedRow(line_no, "RST rows need 3 columns, got " + std::to_string(cols.size()));
    inst.label = parse_label(cols[0], line_no);
    for (const auto& e : split(cols[1], kEduSeparator)) inst.sentences.push_back(nonempty_sentence(e, line_no));
    inst.left_count = inst.sentences.size();
    for (const auto& e : split(cols[2], kEduSeparator)) inst.sentences.push_back(nonempty_sentence(e, line_no));
    return inst;
  }
  const std::size_t want = arity(kind);
  if (cols.size() != want + 1)
    throw MalformedRow(line_no, std::string(kind_name(kind)) + " rows need " + std::to_string(want) +
                                    " sentences, got " + std::to_string(cols.size() - 1));
  inst.label = parse_label(cols[0], line_no);
  for (std::size_t i = 1; i < cols.size(); ++i) inst.sentences.push_back(nonempty_sentence(cols[i], line_no));
  return inst;
}

std::map<std::string, std::string> render_dataset(const Dataset& ds) {
  std::map<std::string, std::string> files;
  std::string labels;
  for (const auto& n : ds.labels.names) labels += n + "\n";
  files[ds.name + ".labels.txt"] = labels;
  for (Split s : kSplits) {
    std::string rows;
    std::string meta;
    for (const auto& inst : ds.split(s)) {
      rows += format_row(inst);
      rows += '\n';
      meta += inst.instance_id + "\t" + std::to_string(inst.replaced_slot) + "\t" +
              (inst.distractor_source.empty() ? "-" : inst.distractor_source) + "\n";
    }
    const std::string base = ds.name + "." + std::string(split_name(s));
    files[base + ".tsv"] = std::move(rows);
    files[base + ".meta.tsv"] = std::move(meta);
  }
  return files;
}

void write_dataset(const Dataset& ds, const fs::path& dir) {
  for (const auto& [name, content] : render_dataset(ds)) write_file_atomic(dir / name, content);
}

Dataset read_dataset(const fs::path& dir, const std::string& name) {
  const auto kind = kind_for_task(base_task(name));
  if (!kind) throw ValidationError("unknown task for dataset '" + name + "'");
  Dataset ds;
  ds.name = name;
  ds.kind = *kind;
  ds.labels.task = name;
  for (const auto& l : split(read_file(dir / (name + ".labels.txt")), '\n'))
    if (!trim(l).empty()) ds.labels.names.emplace_back(trim(l));

  for (Split s : kSplits) {
    const std::string base = name + "." + std::string(split_name(s));
    auto lines = split(read_file(dir / (base + ".tsv")), '\n');
    auto meta = split(read_file(dir / (base + ".meta.tsv")), '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (!meta.empty() && meta.back().empty()) meta.pop_back();
    if (meta.size() != lines.size()) throw ValidationError(base + ".meta.tsv is not aligned with " + base + ".tsv");
    auto& out = ds.split(s);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto inst = parse_row(lines[i], *kind, i + 1);
      if (static_cast<std::size_t>(inst.label) >= ds.labels.size())
        throw MalformedRow(i + 1, "label " + std::to_string(inst.label) + " outside label space");
      const auto m = split(meta[i], '\t');
      if (m.size() != 3) throw ValidationError("bad meta row " + std::to_string(i + 1) + " in " + base + ".meta.tsv");
      inst.instance_id = m[0];
      inst.source_doc_id = doc_id_of(m[0]);
      inst.replaced_slot = parse_label(m[1], i + 1);
      inst.distractor_source = m[2] == "-" ? std::string() : m[2];
      out.push_back(std::move(inst));
    }
  }
  return ds;
}

std::vector<std::string> list_datasets(const fs::path& dir) {
  std::vector<std::string> names;
  constexpr std::string_view suffix = ".labels.txt";
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto f = entry.path().filename().string();
    if (f.size() > suffix.size() && f.compare(f.size() - suffix.size(), suffix.size(), suffix) == 0)
      names.push_back(f.substr(0, f.size() - suffix.size()));
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace disco::synth
