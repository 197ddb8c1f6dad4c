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

#include "disco/corpus/corpus_io.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "disco/common/io.hpp"
#include "disco/corpus/tokenize.hpp"

namespace disco::corpus {

using nlohmann::json;

Sentence make_sentence(std::string raw) {
  Sentence s;
  s.tokens = tokenize(raw);
  s.raw = std::move(raw);
  return s;
}

std::size_t Document::sentence_count() const {
  std::size_t n = 0;
  for (const auto& sec : sections)
    for (const auto& para : sec.paragraphs) n += para.size();
  return n;
}

std::vector<LocatedSentence> flatten(const Document& doc) {
  std::vector<LocatedSentence> out;
  out.reserve(doc.sentence_count());
  int para_pos = 0;
  for (const auto& sec : doc.sections) {
    for (const auto& para : sec.paragraphs) {
      for (std::size_t i = 0; i < para.size(); ++i)
        out.push_back({&para[i], &sec, static_cast<int>(i), para_pos});
      ++para_pos;
    }
  }
  return out;
}

namespace {

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const auto line = trim(text.substr(start, end - start));
    if (!line.empty()) f(line_no, line);
    if (end == text.size()) break;
    start = end + 1;
  }
}

const json& field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw MalformedRecord(line, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key, std::size_t line) {
  const auto& v = field(obj, key, line);
  if (!v.is_string()) throw MalformedRecord(line, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Sentence parse_sentence(const json& v, std::size_t line) {
  if (!v.is_string()) throw MalformedRecord(line, "sentence must be a string");
  auto s = make_sentence(v.get<std::string>());
  if (trim(s.raw).empty() || s.tokens.empty()) throw MalformedRecord(line, "empty sentence");
  return s;
}

Document parse_document(std::string_view text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedRecord(line, e.what());
  }
  if (!obj.is_object()) throw MalformedRecord(line, "record must be a JSON object");

  Document doc;
  doc.id = string_field(obj, "id", line);
  if (doc.id.empty()) throw MalformedRecord(line, "empty id");
  doc.title_raw = string_field(obj, "title", line);
  doc.title = tokenize(doc.title_raw);

  const auto& cats = field(obj, "categories", line);
  if (!cats.is_array()) throw MalformedRecord(line, "'categories' must be an array");
  std::set<std::string> cat_set;
  for (const auto& c : cats) {
    if (!c.is_string()) throw MalformedRecord(line, "category must be a string");
    cat_set.insert(c.get<std::string>());
  }
  doc.categories.assign(cat_set.begin(), cat_set.end());

  const auto& secs = field(obj, "sections", line);
  if (!secs.is_array()) throw MalformedRecord(line, "'sections' must be an array");
  for (const auto& s : secs) {
    if (!s.is_object()) throw MalformedRecord(line, "section must be an object");
    Section sec;
    sec.title_raw = string_field(s, "title", line);
    sec.title = tokenize(sec.title_raw);
    const auto& lvl = field(s, "level", line);
    if (!lvl.is_number_integer()) throw MalformedRecord(line, "'level' must be an integer");
    sec.level = lvl.get<int>();
    if (sec.level < 1 || sec.level > kMaxNestingLevel) throw LevelOutOfRange(sec.level);
    const auto& paras = field(s, "paragraphs", line);
    if (!paras.is_array()) throw MalformedRecord(line, "'paragraphs' must be an array");
    for (const auto& p : paras) {
      if (!p.is_array()) throw MalformedRecord(line, "paragraph must be an array of strings");
      Paragraph para;
      for (const auto& sent : p) para.push_back(parse_sentence(sent, line));
      if (!para.empty()) sec.paragraphs.push_back(std::move(para));
    }
    doc.sections.push_back(std::move(sec));
  }
  if (doc.sentence_count() == 0) throw MalformedRecord(line, "document has no sentences");
  return doc;
}

}  // namespace

std::vector<Document> parse_corpus(std::string_view jsonl) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  for_each_line(jsonl, [&](std::size_t line, std::string_view text) {
    auto doc = parse_document(text, line);
    if (!seen.insert(doc.id).second) throw DuplicateId(doc.id);
    docs.push_back(std::move(doc));
  });
  return docs;
}

std::vector<Document> read_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path));
}

std::string serialize_document(const Document& doc) {
  json obj;
  obj["id"] = doc.id;
  obj["title"] = doc.title_raw;
  obj["categories"] = doc.categories;
  json secs = json::array();
  for (const auto& sec : doc.sections) {
    json s;
    s["title"] = sec.title_raw;
    s["level"] = sec.level;
    json paras = json::array();
    for (const auto& para : sec.paragraphs) {
      json p = json::array();
      for (const auto& sent : para) p.push_back(sent.raw);
      paras.push_back(std::move(p));
    }
    s["paragraphs"] = std::move(paras);
    secs.push_back(std::move(s));
  }
  obj["sections"] = std::move(secs);
  return obj.dump();
}

std::string serialize_corpus(const std::vector<Document>& docs) {
  std::string out;
  for (const auto& d : docs) {
    out += serialize_document(d);
    out += '\n';
  }
  return out;
}

std::vector<Thread> parse_threads(std::string_view jsonl) {
  std::vector<Thread> threads;
  std::set<std::string> seen;
  for_each_line(jsonl, [&](std::size_t line, std::string_view text) {
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error& e) {
      throw MalformedRecord(line, e.what());
    }
    if (!obj.is_object()) throw MalformedRecord(line, "record must be a JSON object");
    Thread t;
    t.id = string_field(obj, "thread_id", line);
    if (t.id.empty()) throw MalformedRecord(line, "empty thread_id");
    const auto& utts = field(obj, "utterances", line);
    if (!utts.is_array()) throw MalformedRecord(line, "'utterances' must be an array");
    for (const auto& u : utts) {
      if (!u.is_string()) throw MalformedRecord(line, "utterance must be a string");
      auto s = make_sentence(u.get<std::string>());
      // Empty utterances carry nothing to embed; drop them here rather than
      // in the thread filter so indices stay meaningful.
      if (!s.tokens.empty()) t.utterances.push_back(std::move(s));
    }
    if (!seen.insert(t.id).second) throw DuplicateId(t.id);
    threads.push_back(std::move(t));
  });
  return threads;
}

std::vector<Thread> read_threads(const std::filesystem::path& path) {
  return parse_threads(read_file(path));
}

std::string serialize_threads(const std::vector<Thread>& threads) {
  std::string out;
  for (const auto& t : threads) {
    json obj;
    obj["thread_id"] = t.id;
    json utts = json::array();
    for (const auto& u : t.utterances) utts.push_back(u.raw);
    obj["utterances"] = std::move(utts);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace disco::corpus
