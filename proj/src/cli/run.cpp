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

#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "disco/cli/fixtures.hpp"
#include "disco/cli/pipeline.hpp"
#include "disco/cli/selftest.hpp"
#include "disco/common/io.hpp"
#include "disco/corpus/corpus_io.hpp"
#include "disco/eval/report.hpp"
#include "disco/synth/dataset_io.hpp"

namespace disco::cli {
namespace fs = std::filesystem;
namespace {

struct Args {
  std::string config_path;
  std::vector<std::string> sets;  // key=value
  std::map<std::string, std::string> flags;  // config key -> text from dedicated flags

  // fixture
  std::string fixture_kind;
  std::string output;
  std::size_t count = 0;
  int dim = 0;
  // synth
  std::string task;
  std::string input;
  std::string domain;
  std::string region = "first-paragraph";
  bool all_windows = false;
  double rst_dev_fraction = 0.1;
  // embed / eval / report
  std::string checkpoint;
  std::string embeddings;
  std::string data_dir;
  std::string results;
  std::string construction;
};

void config_flag(CLI::App* app, Args& a, const std::string& flag, const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(flag, [&a, key](const std::string& v) { a.flags[key] = v; }, help);
}

RunConfig resolve(const Args& a) {
  Overrides ov;
  for (const auto& [k, v] : a.flags) ov.emplace_back(k, v);
  for (const auto& s : a.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw InvalidValue("--set", "expected key=value, got '" + s + "'");
    ov.emplace_back(std::string(trim(s.substr(0, eq))), s.substr(eq + 1));
  }
  std::optional<fs::path> file;
  if (!a.config_path.empty()) file = a.config_path;
  return load_config(file, ov);
}

fs::path or_default(const std::string& given, const fs::path& fallback) { return given.empty() ? fallback : fs::path(given); }

int cmd_fixture(const Args& a, const RunConfig& cfg, std::ostream& out) {
  const fs::path dest(a.output);
  std::string text;
  const std::string& k = a.fixture_kind;
  if (k == "wiki") {
    fixtures::WikiOptions o;
    o.seed = cfg.seed;
    if (a.count) o.documents = a.count;
    text = corpus::serialize_corpus(fixtures::wiki_corpus(o));
  } else if (k == "threads") {
    fixtures::ThreadOptions o;
    o.seed = cfg.seed;
    if (a.count) o.threads = a.count;
    text = corpus::serialize_threads(fixtures::chat_threads(o));
  } else if (k == "papers") {
    fixtures::PaperOptions o;
    o.seed = cfg.seed;
    if (a.count) o.papers = a.count;
    text = corpus::serialize_corpus(fixtures::paper_corpus(o));
  } else if (k == "pdtb") {
    fixtures::PdtbOptions o;
    o.seed = cfg.seed;
    if (a.count) o.records = a.count;
    text = synth::serialize_pdtb(fixtures::pdtb_records(o));
  } else if (k == "rst") {
    fixtures::RstOptions o;
    o.seed = cfg.seed;
    if (a.count) o.documents = a.count;
    text = synth::serialize_rst(fixtures::rst_documents(o));
  } else {  // vectors
    if (cfg.corpus_path.empty()) throw InvalidValue("corpus_path", "vector fixture needs --corpus");
    const int dim = a.dim > 0 ? a.dim : static_cast<int>(cfg.word_dim);
    text = fixtures::word_vector_file(corpus::read_corpus(cfg.corpus_path), dim, cfg.seed);
  }
  if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
  write_file_atomic(dest, text);
  out << "wrote " << dest.string() << "\n";
  return 0;
}

synth::Region parse_region(const std::string& r) {
  if (r == "first-paragraph") return synth::Region::kFirstParagraph;
  if (r == "first-section") return synth::Region::kFirstSection;
  return synth::Region::kDocument;
}

int cmd_synth(const Args& a, const RunConfig& cfg, std::ostream& out) {
  SynthRequest req;
  req.task = a.task;
  req.input = a.input;
  req.domain = a.domain;
  req.windows = {parse_region(a.region), a.all_windows};
  req.rst_dev_fraction = a.rst_dev_fraction;
  const auto datasets = synthesize(req, cfg);
  fs::create_directories(cfg.out_dir);
  for (const auto& ds : datasets) {
    synth::write_dataset(ds, cfg.out_dir);
    out << ds.name << ": train " << ds.train.size() << ", dev " << ds.dev.size() << ", test " << ds.test.size()
        << ", " << ds.labels.size() << " labels\n";
  }
  return 0;
}

int cmd_train(const RunConfig& cfg, std::ostream& out) {
  auto result = train_encoder(cfg);
  fs::create_directories(cfg.out_dir);
  nn::save_checkpoint(cfg.out_dir / "encoder.ckpt", result.checkpoint);
  write_file_atomic(cfg.out_dir / "train_log.jsonl", result.log.to_jsonl());
  out << "trained " << result.log.steps << " steps; wrote " << (cfg.out_dir / "encoder.ckpt").string() << "\n";
  for (auto l : train::kLosses) {
    const std::string name(train::loss_name(l));
    const auto series = result.log.series(name);
    if (series.empty()) continue;
    const std::size_t w = std::min<std::size_t>(100, series.size());
    out << "  " << name << ": first " << w << " steps " << result.log.window_mean(name, w, false) << ", last " << w
        << " steps " << result.log.window_mean(name, w, true) << "\n";
  }
  return 0;
}

std::unique_ptr<eval::EmbeddingSource> open_source(const Args& a, const RunConfig& cfg) {
  if (!a.embeddings.empty() && !a.checkpoint.empty())
    throw InvalidValue("--embeddings", "give either --embeddings or --checkpoint, not both");
  if (!a.embeddings.empty()) {
    if (!fs::exists(a.embeddings)) throw MissingPath(a.embeddings);
    return std::make_unique<eval::EmbeddingCache>(eval::read_cache(a.embeddings));
  }
  const fs::path ck = or_default(a.checkpoint, cfg.out_dir / "encoder.ckpt");
  if (!fs::exists(ck)) throw MissingPath(ck);
  return std::make_unique<eval::EncoderSource>(nn::load_checkpoint(ck));
}

int cmd_embed(const Args& a, const RunConfig& cfg, std::ostream& out) {
  const fs::path data = or_default(a.data_dir, cfg.out_dir);
  const auto datasets = load_datasets(data, cfg.tasks);
  if (datasets.empty()) throw InvalidValue("--data-dir", "no datasets for the selected tasks in " + data.string());
  const fs::path ck = or_default(a.checkpoint, cfg.out_dir / "encoder.ckpt");
  if (!fs::exists(ck)) throw MissingPath(ck);
  eval::EncoderSource src(nn::load_checkpoint(ck));
  std::vector<const synth::Dataset*> ptrs;
  for (const auto& d : datasets) ptrs.push_back(&d);
  const fs::path dest = or_default(a.output, cfg.out_dir / "embeddings.tsv");
  if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
  write_file_atomic(dest, eval::render_cache(ptrs, src));
  out << "wrote " << dest.string() << "\n";
  return 0;
}

void emit_report(const std::vector<eval::EvalResult>& results, const RunConfig& cfg, std::ostream& out) {
  const auto report = eval::make_report(results, cfg.tasks);
  fs::create_directories(cfg.out_dir);
  eval::write_report(report, cfg.out_dir);
  out << report.txt;
}

int cmd_eval(const Args& a, const RunConfig& cfg, std::ostream& out) {
  std::optional<eval::Construction> construction;
  if (!a.construction.empty()) {
    construction = eval::parse_construction(a.construction);
    if (!construction) throw InvalidValue("--construction", "unknown construction '" + a.construction + "'");
  }
  const fs::path data = or_default(a.data_dir, cfg.out_dir);
  const auto datasets = load_datasets(data, cfg.tasks);
  auto source = open_source(a, cfg);
  std::vector<eval::EvalResult> results;
  for (const auto& ds : datasets) {
    results.push_back(evaluate_dataset(ds, *source, cfg, construction));
    const auto& r = results.back();
    out << r.task << ": dev " << r.dev_accuracy << ", test " << r.test_accuracy << ", l2 " << r.l2 << "\n";
  }
  fs::create_directories(cfg.out_dir);
  write_file_atomic(cfg.out_dir / "eval_results.jsonl", eval::results_jsonl(results));
  emit_report(results, cfg, out);
  return 0;
}

int cmd_report(const Args& a, const RunConfig& cfg, std::ostream& out) {
  const fs::path src = or_default(a.results, cfg.out_dir / "eval_results.jsonl");
  if (!fs::exists(src)) throw MissingPath(src);
  emit_report(eval::parse_results(read_file(src)), cfg, out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discourse probing pipeline: dataset synthesis, encoder training, probe evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--config", a.config_path, "TOML configuration file");
  app.add_option("--set", a.sets, "Override a config key (key=value); repeatable");
  config_flag(&app, a, "--profile", "profile", "desk | paper");
  config_flag(&app, a, "--seed", "seed", "Random seed");
  config_flag(&app, a, "--out-dir", "out_dir", "Output directory");
  config_flag(&app, a, "--corpus", "corpus_path", "Document corpus (JSONL)");
  config_flag(&app, a, "--vectors", "vectors_path", "Word vector file");

  auto* fixture = app.add_subcommand("fixture", "Write a synthetic input corpus");
  fixture->add_option("--kind", a.fixture_kind, "Corpus kind")
      ->required()
      ->check(CLI::IsMember({"wiki", "threads", "papers", "pdtb", "rst", "vectors"}));
  fixture->add_option("--output", a.output, "Destination file")->required();
  fixture->add_option("--count", a.count, "Documents, threads or records (0: default)");
  fixture->add_option("--dim", a.dim, "Vector dimension (vectors only; default word_dim)");

  auto* synth = app.add_subcommand("synth", "Synthesize probing datasets");
  synth->add_option("--task", a.task, "sp | bso | dc | ssp | pdtb | pdtb-e | pdtb-i | rst")
      ->required()
      ->check(CLI::IsMember({"sp", "bso", "dc", "ssp", "pdtb", "pdtb-e", "pdtb-i", "rst"}));
  synth->add_option("--input", a.input, "Input file (default corpus_path)");
  synth->add_option("--domain", a.domain, "Domain suffix of the dataset name");
  config_flag(synth, a, "--counts", "counts", "train,dev,test");
  config_flag(synth, a, "--dc-pool", "dc_candidate_pool", "Distractor candidate pool size");
  config_flag(synth, a, "--rst-label-mode", "rst_label_mode", "relation | nuclearity_relation");
  synth->add_option("--region", a.region, "Window region")
      ->check(CLI::IsMember({"first-paragraph", "first-section", "document"}));
  synth->add_flag("--all-windows", a.all_windows, "Use every non-overlapping window of the region");
  synth->add_option("--rst-dev-fraction", a.rst_dev_fraction, "Share of RST train documents used as dev")
      ->check(CLI::Range(0.0, 1.0));

  auto* train = app.add_subcommand("train", "Train the sentence encoder for one epoch");
  config_flag(train, a, "--losses", "losses", "Comma-separated losses (nsp,nl,spp,sdt)");
  config_flag(train, a, "--loss-weights", "loss_weights", "name=weight pairs");
  config_flag(train, a, "--hidden-dim", "hidden_dim", "GRU hidden size");
  config_flag(train, a, "--word-dim", "word_dim", "Word vector size");
  config_flag(train, a, "--batch-size", "batch_size", "Batch size");

  auto* embed = app.add_subcommand("embed", "Write an embedding cache for datasets");
  embed->add_option("--checkpoint", a.checkpoint, "Encoder checkpoint (default out_dir/encoder.ckpt)");
  embed->add_option("--data-dir", a.data_dir, "Dataset directory (default out_dir)");
  embed->add_option("--output", a.output, "Cache file (default out_dir/embeddings.tsv)");
  config_flag(embed, a, "--task", "tasks", "Tasks to embed (comma-separated or all)");

  auto* evalc = app.add_subcommand("eval", "Train and evaluate probes on frozen embeddings");
  config_flag(evalc, a, "--task", "tasks", "Tasks to evaluate (comma-separated or all)");
  evalc->add_option("--data-dir", a.data_dir, "Dataset directory (default out_dir)");
  evalc->add_option("--embeddings", a.embeddings, "Embedding cache TSV");
  evalc->add_option("--checkpoint", a.checkpoint, "Encoder checkpoint (default out_dir/encoder.ckpt)");
  evalc->add_option("--construction", a.construction, "Feature construction override (e.g. sp1)");
  config_flag(evalc, a, "--l2-grid", "probe_l2_grid", "Comma-separated L2 strengths");

  auto* report = app.add_subcommand("report", "Build report.csv and report.txt from eval results");
  report->add_option("--results", a.results, "Results file (default out_dir/eval_results.jsonl)");
  config_flag(report, a, "--task", "tasks", "Report columns (comma-separated or all)");

  auto* selftest = app.add_subcommand("selftest", "Gradient and determinism checks");
  auto* config = app.add_subcommand("config", "Print the effective configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const RunConfig cfg = resolve(a);
    if (config->parsed()) {
      out << cfg.to_toml();
      return 0;
    }
    err << cfg.to_toml();
    if (fixture->parsed()) return cmd_fixture(a, cfg, out);
    if (synth->parsed()) return cmd_synth(a, cfg, out);
    if (train->parsed()) return cmd_train(cfg, out);
    if (embed->parsed()) return cmd_embed(a, cfg, out);
    if (evalc->parsed()) return cmd_eval(a, cfg, out);
    if (report->parsed()) return cmd_report(a, cfg, out);
    if (selftest->parsed()) return run_selftest(cfg.seed, out) ? 0 : 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace disco::cli
