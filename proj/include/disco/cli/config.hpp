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

#ifndef DISCO_CLI_CONFIG_HPP_
#define DISCO_CLI_CONFIG_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disco/common/error.hpp"
#include "disco/synth/rst.hpp"
#include "disco/synth/synthesizers.hpp"
#include "disco/train/objectives.hpp"

namespace disco::cli {

class UnknownKey : public ValidationError {
 public:
  explicit UnknownKey(const std::string& key) : ValidationError("unknown config key: " + key), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class InvalidValue : public ValidationError {
 public:
  InvalidValue(const std::string& key, const std::string& reason)
      : ValidationError("invalid value for " + key + ": " + reason), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class MissingPath : public ValidationError {
 public:
  explicit MissingPath(const std::filesystem::path& path)
      : ValidationError("path does not exist: " + path.string()), path_(path) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline constexpr std::array<std::string_view, 16> kConfigKeys = {
    "corpus_path", "vectors_path", "out_dir",       "profile",        "seed",          "losses",
    "loss_weights", "hidden_dim",  "word_dim",      "batch_size",     "spp_caps",      "tasks",
    "probe_l2_grid", "rst_label_mode", "dc_candidate_pool", "counts"};

struct RunConfig {
  std::filesystem::path corpus_path;
  std::filesystem::path vectors_path;
  std::filesystem::path out_dir = "disco-out";
  std::string profile = "desk";
  std::uint64_t seed = 13;
  std::vector<std::string> losses{"nsp"};
  std::map<std::string, double> loss_weights{{"nsp", 1.0}, {"nl", 1.0}, {"spp", 1.0}, {"sdt", 1.0}};
  long hidden_dim = 32;
  long word_dim = 32;
  int batch_size = 64;
  std::array<int, 2> spp_caps{32, 64};
  std::vector<std::string> tasks{"sp", "bso", "dc", "ssp", "pdtb-e", "pdtb-i", "rst"};
  std::vector<double> probe_l2_grid{0.0, 1e-4, 1e-3, 1e-2};
  std::string rst_label_mode = "nuclearity_relation";
  std::size_t dc_candidate_pool = 1000;
  std::array<std::size_t, 3> counts{10000, 4000, 4000};

  // Fixed by the profile, not settable from the file.
  int epochs = 1;
  int min_count = 1;

  train::LossConfig loss_config() const;
  synth::Counts synth_counts() const;
  synth::RstLabelMode rst_mode() const;
  // TOML document with every resolved value, derived values as comments.
  std::string to_toml() const;
};

RunConfig profile_defaults(std::string_view profile);

// Command-line overrides as (key, text). Lists are comma separated
// ("10000,4000,4000"); loss_weights is "nsp=1,nl=0.5"; TOML literals
// ("[1, 2]", "{nsp = 1}") are accepted as well.
using Overrides = std::vector<std::pair<std::string, std::string>>;

// defaults(profile) < file < DISCO_SEED < overrides. The profile itself is
// taken from the overrides, then the file, then "desk".
RunConfig resolve_config(std::string_view toml_text, const Overrides& overrides,
                         const std::optional<std::string>& env_seed);

// Reads the file (when given) and the DISCO_SEED environment variable, then
// validates referenced paths.
RunConfig load_config(const std::optional<std::filesystem::path>& path, const Overrides& overrides = {});

// Throws MissingPath for a configured corpus or vectors path that does not exist.
void validate_paths(const RunConfig& cfg);

}  // namespace disco::cli

#endif  // DISCO_CLI_CONFIG_HPP_
