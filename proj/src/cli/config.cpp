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

#include "disco/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include <toml.hpp>

#include "disco/common/io.hpp"
#include "disco/eval/report.hpp"

namespace disco::cli {
namespace {

bool is_key(std::string_view key) {
  return std::find(kConfigKeys.begin(), kConfigKeys.end(), key) != kConfigKeys.end();
}

std::string node_string(const std::string& key, const toml::node& n) {
  auto v = n.value_exact<std::string>();
  if (!v) throw InvalidValue(key, "expected a string");
  return *v;
}

std::int64_t node_int(const std::string& key, const toml::node& n, std::int64_t min) {
  auto v = n.value_exact<std::int64_t>();
  if (!v) throw InvalidValue(key, "expected an integer");
  if (*v < min) throw InvalidValue(key, "must be at least " + std::to_string(min));
  return *v;
}

double node_number(const std::string& key, const toml::node& n) {
  if (!n.is_number()) throw InvalidValue(key, "expected a number");
  return *n.value<double>();
}

const toml::array& node_array(const std::string& key, const toml::node& n) {
  const auto* a = n.as_array();
  if (!a) throw InvalidValue(key, "expected a list");
  return *a;
}

void apply(RunConfig& c, const std::string& key, const toml::node& n) {
  if (key == "corpus_path") {
    c.corpus_path = node_string(key, n);
  } else if (key == "vectors_path") {
    c.vectors_path = node_string(key, n);
  } else if (key == "out_dir") {
    c.out_dir = node_string(key, n);
    if (c.out_dir.empty()) throw InvalidValue(key, "empty path");
  } else if (key == "profile") {
    // Already resolved before defaults were chosen.
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(node_int(key, n, 0));
  } else if (key == "losses") {
    std::vector<std::string> out;
    for (const auto& item : node_array(key, n)) {
      auto name = node_string(key, item);
      if (!train::parse_loss(name)) throw InvalidValue(key, "unknown loss '" + name + "'");
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    if (std::find(out.begin(), out.end(), "nsp") == out.end()) throw InvalidValue(key, "nsp cannot be disabled");
    c.losses = out;
  } else if (key == "loss_weights") {
    const auto* t = n.as_table();
    if (!t) throw InvalidValue(key, "expected a table");
    for (const auto& [k, v] : *t) {
      std::string name(k.str());
      if (!train::parse_loss(name)) throw InvalidValue(key, "unknown loss '" + name + "'");
      double w = node_number(key + "." + name, v);
      if (!(w >= 0.0)) throw InvalidValue(key + "." + name, "must be non-negative");
      c.loss_weights[name] = w;
    }
  } else if (key == "hidden_dim") {
    c.hidden_dim = static_cast<long>(node_int(key, n, 1));
  } else if (key == "word_dim") {
    c.word_dim = static_cast<long>(node_int(key, n, 1));
  } else if (key == "batch_size") {
    c.batch_size = static_cast<int>(node_int(key, n, 1));
  } else if (key == "spp_caps") {
    const auto& a = node_array(key, n);
    if (a.size() != 2) throw InvalidValue(key, "expected [sentence_cap, paragraph_cap]");
    for (std::size_t i = 0; i < 2; ++i) c.spp_caps[i] = static_cast<int>(node_int(key, *a.get(i), 1));
  } else if (key == "tasks") {
    std::vector<std::string> out;
    for (const auto& item : node_array(key, n)) {
      auto name = node_string(key, item);
      if (name == "all") {
        out.assign(eval::kReportTasks.begin(), eval::kReportTasks.end());
        continue;
      }
      if (std::find(eval::kReportTasks.begin(), eval::kReportTasks.end(), name) == eval::kReportTasks.end())
        throw InvalidValue(key, "unknown task '" + name + "'");
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    if (out.empty()) throw InvalidValue(key, "no tasks selected");
    c.tasks = out;
  } else if (key == "probe_l2_grid") {
    std::vector<double> out;
    for (const auto& item : node_array(key, n)) {
      double v = node_number(key, item);
      if (!(v >= 0.0)) throw InvalidValue(key, "values must be non-negative");
      out.push_back(v);
    }
    if (out.empty()) throw InvalidValue(key, "empty grid");
    c.probe_l2_grid = out;
  } else if (key == "rst_label_mode") {
    auto v = node_string(key, n);
    if (v != "relation" && v != "nuclearity_relation")
      throw InvalidValue(key, "expected \"relation\" or \"nuclearity_relation\"");
    c.rst_label_mode = v;
  } else if (key == "dc_candidate_pool") {
    c.dc_candidate_pool = static_cast<std::size_t>(node_int(key, n, 1));
  } else if (key == "counts") {
    const auto& a = node_array(key, n);
    if (a.size() != 3) throw InvalidValue(key, "expected [train, dev, test]");
    for (std::size_t i = 0; i < 3; ++i) c.counts[i] = static_cast<std::size_t>(node_int(key, *a.get(i), 0));
    if (c.counts[0] == 0) throw InvalidValue(key, "train count must be positive");
  } else {
    throw UnknownKey(key);
  }
}

toml::table parse_toml(std::string_view text, const std::string& what) {
  try {
    return toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " (line " << e.source().begin.line << ")";
    throw InvalidValue(what, os.str());
  }
}

// A bare item becomes a TOML literal when it parses as one, else a string.
std::string literal(std::string_view item) {
  std::string s(trim(item));
  try {
    (void)toml::parse("v = " + s);
    return s;
  } catch (const toml::parse_error&) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q += '\\';
      q += ch;
    }
    return q + "\"";
  }
}

std::string override_literal(const std::string& key, const std::string& text) {
  const std::string_view t = trim(text);
  if (key == "loss_weights") {
    if (t.starts_with('{')) return std::string(t);
    std::vector<std::string> kv;
    for (const auto& item : split(t, ',')) {
      auto parts = split(item, '=');
      if (parts.size() != 2) throw InvalidValue(key, "expected name=weight pairs");
      kv.push_back(std::string(trim(parts[0])) + " = " + literal(parts[1]));
    }
    return "{ " + join(kv, ", ") + " }";
  }
  static const std::array<std::string_view, 5> list_keys = {"losses", "tasks", "probe_l2_grid", "spp_caps", "counts"};
  if (std::find(list_keys.begin(), list_keys.end(), key) != list_keys.end()) {
    if (t.starts_with('[')) return std::string(t);
    std::vector<std::string> items;
    for (const auto& item : split(t, ',')) items.push_back(literal(item));
    return "[" + join(items, ", ") + "]";
  }
  return literal(t);
}

}  // namespace

train::LossConfig RunConfig::loss_config() const {
  train::LossConfig lc;
  for (auto l : train::kLosses) {
    const std::string name(train::loss_name(l));
    const auto i = static_cast<std::size_t>(l);
    lc.enabled[i] = std::find(losses.begin(), losses.end(), name) != losses.end();
    if (auto it = loss_weights.find(name); it != loss_weights.end()) lc.weights[i] = it->second;
  }
  lc.sp_cap = spp_caps[0];
  lc.pp_cap = spp_caps[1];
  lc.batch_size = batch_size;
  lc.seed = seed;
  lc.validate();
  return lc;
}

synth::Counts RunConfig::synth_counts() const { return {counts[0], counts[1], counts[2]}; }

synth::RstLabelMode RunConfig::rst_mode() const {
  return rst_label_mode == "relation" ? synth::RstLabelMode::kRelation : synth::RstLabelMode::kNuclearityRelation;
}

std::string RunConfig::to_toml() const {
  toml::table t;
  t.insert("corpus_path", corpus_path.string());
  t.insert("vectors_path", vectors_path.string());
  t.insert("out_dir", out_dir.string());
  t.insert("profile", profile);
  t.insert("seed", static_cast<std::int64_t>(seed));
  toml::array ls;
  for (const auto& l : losses) ls.push_back(l);
  t.insert("losses", ls);
  toml::table lw;
  for (const auto& [k, v] : loss_weights) lw.insert(k, v);
  t.insert("loss_weights", lw);
  t.insert("hidden_dim", static_cast<std::int64_t>(hidden_dim));
  t.insert("word_dim", static_cast<std::int64_t>(word_dim));
  t.insert("batch_size", static_cast<std::int64_t>(batch_size));
  t.insert("spp_caps", toml::array{spp_caps[0], spp_caps[1]});
  toml::array ts;
  for (const auto& x : tasks) ts.push_back(x);
  t.insert("tasks", ts);
  toml::array grid;
  for (double g : probe_l2_grid) grid.push_back(g);
  t.insert("probe_l2_grid", grid);
  t.insert("rst_label_mode", rst_label_mode);
  t.insert("dc_candidate_pool", static_cast<std::int64_t>(dc_candidate_pool));
  t.insert("counts", toml::array{static_cast<std::int64_t>(counts[0]), static_cast<std::int64_t>(counts[1]),
                                 static_cast<std::int64_t>(counts[2])});
  std::ostringstream os;
  os << "# effective configuration\n"
     << "# epochs = " << epochs << ", min_count = " << min_count << ", head_hidden = " << 2 * hidden_dim
     << ", adam_lr = 0.001\n"
     << t << "\n";
  return os.str();
}

RunConfig profile_defaults(std::string_view profile) {
  RunConfig c;
  if (profile == "desk") return c;
  if (profile == "paper") {
    c.profile = "paper";
    c.hidden_dim = 1200;
    c.word_dim = 300;
    c.epochs = 1;
    return c;
  }
  throw InvalidValue("profile", "expected \"desk\" or \"paper\", got \"" + std::string(profile) + "\"");
}

RunConfig resolve_config(std::string_view toml_text, const Overrides& overrides,
                         const std::optional<std::string>& env_seed) {
  const toml::table file = parse_toml(toml_text, "config file");
  for (const auto& [k, v] : file)
    if (!is_key(k.str())) throw UnknownKey(std::string(k.str()));

  std::vector<std::pair<std::string, toml::table>> parsed;
  for (const auto& [key, text] : overrides) {
    if (!is_key(key)) throw UnknownKey(key);
    parsed.emplace_back(key, parse_toml(key + " = " + override_literal(key, text), key));
  }

  std::string profile = "desk";
  if (const auto* n = file.get("profile")) profile = node_string("profile", *n);
  for (const auto& [key, t] : parsed)
    if (key == "profile") profile = node_string(key, *t.get(key));

  RunConfig c = profile_defaults(profile);
  for (const auto& [k, v] : file) apply(c, std::string(k.str()), v);
  if (env_seed) {
    std::uint64_t s = 0;
    const std::string& e = *env_seed;
    auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), s);
    if (e.empty() || ec != std::errc() || ptr != e.data() + e.size())
      throw InvalidValue("DISCO_SEED", "expected a non-negative integer, got \"" + e + "\"");
    c.seed = s;
  }
  for (const auto& [key, t] : parsed) apply(c, key, *t.get(key));
  (void)c.loss_config();
  return c;
}

void validate_paths(const RunConfig& cfg) {
  for (const auto* p : {&cfg.corpus_path, &cfg.vectors_path})
    if (!p->empty() && !std::filesystem::exists(*p)) throw MissingPath(*p);
}

RunConfig load_config(const std::optional<std::filesystem::path>& path, const Overrides& overrides) {
  std::string text;
  if (path) {
    if (!std::filesystem::exists(*path)) throw MissingPath(*path);
    text = read_file(*path);
  }
  std::optional<std::string> env_seed;
  if (const char* e = std::getenv("DISCO_SEED")) env_seed = e;
  RunConfig c = resolve_config(text, overrides, env_seed);
  validate_paths(c);
  return c;
}

}  // namespace disco::cli
