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

#ifndef DISCO_SYNTH_DATASET_IO_HPP_
#define DISCO_SYNTH_DATASET_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "disco/synth/task_instance.hpp"

namespace disco::synth {

class MalformedRow : public ValidationError {
 public:
  MalformedRow(std::size_t line, const std::string& reason)
      : ValidationError("malformed dataset row at line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr std::string_view kEduSeparator = " ||| ";

// "<label>\t<s1>\t...\t<sk>"; RST rows are "<label>\t<left EDUs>\t<right EDUs>"
// with EDUs joined by " ||| ".
std::string format_row(const TaskInstance& inst);
TaskInstance parse_row(std::string_view line, TaskKind kind, std::size_t line_no);

// Per-split TSV bodies and sidecars. The sidecar "<name>.<split>.meta.tsv"
// holds "instance_id\treplaced_slot\tdistractor_source" per row, aligned
// with the TSV, since the instance TSV carries only label and text.
std::map<std::string, std::string> render_dataset(const Dataset& ds);

// Writes every file of the dataset atomically into dir.
void write_dataset(const Dataset& ds, const std::filesystem::path& dir);
Dataset read_dataset(const std::filesystem::path& dir, const std::string& name);

// Dataset names with a "<name>.labels.txt" file in dir, sorted.
std::vector<std::string> list_datasets(const std::filesystem::path& dir);

}  // namespace disco::synth

#endif  // DISCO_SYNTH_DATASET_IO_HPP_
