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

#ifndef DISCO_CORPUS_CORPUS_IO_HPP_
#define DISCO_CORPUS_CORPUS_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "disco/common/error.hpp"
#include "disco/corpus/document.hpp"

namespace disco::corpus {

class MalformedRecord : public ValidationError {
 public:
  MalformedRecord(std::size_t line, const std::string& reason)
      : ValidationError("malformed record at line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateId : public ValidationError {
 public:
  explicit DuplicateId(const std::string& id) : ValidationError("duplicate document id: " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class LevelOutOfRange : public ValidationError {
 public:
  explicit LevelOutOfRange(int level)
      : ValidationError("section level out of range [1,7]: " + std::to_string(level)), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

// One JSON document per line:
// {"id","title","categories":[..],"sections":[{"title","level","paragraphs":[[s,..],..]}]}
// Blank lines are skipped; empty paragraphs are dropped.
std::vector<Document> parse_corpus(std::string_view jsonl);
std::vector<Document> read_corpus(const std::filesystem::path& path);

std::string serialize_document(const Document& doc);
std::string serialize_corpus(const std::vector<Document>& docs);

// {"thread_id","utterances":[..]} per line.
std::vector<Thread> parse_threads(std::string_view jsonl);
std::vector<Thread> read_threads(const std::filesystem::path& path);
std::string serialize_threads(const std::vector<Thread>& threads);

}  // namespace disco::corpus

#endif  // DISCO_CORPUS_CORPUS_IO_HPP_
