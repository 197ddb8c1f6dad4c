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

#ifndef DISCO_COMMON_IO_HPP_
#define DISCO_COMMON_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace disco {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it into place, so readers never
// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::vector<std::string> split(std::string_view text, char sep);
std::vector<std::string> split(std::string_view text, std::string_view sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string_view trim(std::string_view s);

}  // namespace disco

#endif  // DISCO_COMMON_IO_HPP_
