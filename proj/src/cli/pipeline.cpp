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

#include "disco/cli/pipeline.hpp"

#include <algorithm>
#include <span>

#include <json.hpp>

#include "disco/common/io.hpp"
#include "disco/common/rng.hpp"
#include "disco/corpus/contexts.hpp"
#include "disco/corpus/corpus_io.hpp"
#include "disco/corpus/word_vectors.hpp"
#include "disco/synth/dataset_io.hpp"
#include "disco/synth/pdtb.hpp"
#include "disco/synth/rst.hpp"

namespace disco::cli {
namespace {

std::filesystem::path require_input(const std::filesystem::path& given, const RunConfig& cfg) {
  const auto p = given.empty() ? cfg.corpus_path : given;
  if (p.empty()) throw InvalidValue("input", "no input file given (use --input or corpus_path)");
  if (!std::filesystem::exists(p)) throw MissingPath(p);
  return p;
}

bool looks_like_threads(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  for (const auto& line : split(text, '\n')) {
    if (trim(line).empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    return j.is_object() && j.contains("thread_id");
  }
  return false;
}

}  // namespace

std::set<std::string> rst_dev_documents(const std::vector<synth::RstDocument>& docs, double fraction,
                                        std::uint64_t seed) {
  std::vector<std::string> train_ids;
  for (const auto& d : docs)
    if (d.split == "train") train_ids.push_back(d.doc_id);
  std::sort(train_ids.begin(), train_ids.end());
  if (train_ids.size() < 2) return {};
  auto n = static_cast<std::size_t>(fraction * static_cast<double>(train_ids.size()));
  n = std::clamp<std::size_t>(n, 1, train_ids.size() - 1);
  Rng rng = derive_rng(seed, "rst-dev");
  shuffle(std::span<std::string>(train_ids), rng);
  return {train_ids.begin(), train_ids.begin() + static_cast<std::ptrdiff_t>(n)};
}

std::vector<synth::Dataset> synthesize(const SynthRequest& req, const RunConfig& cfg) {
  synth::SynthOptions opt;
  opt.seed = cfg.seed;
  opt.counts = cfg.synth_counts();
  opt.windows = req.windows;
  opt.dc_candidate_pool = cfg.dc_candidate_pool;
  opt.domain = req.domain;
  const auto input = require_input(req.input, cfg);
  const std::string& t = req.task;

  if (t == "sp") return {synth::synth_sp(corpus::read_corpus(input), opt)};
  if (t == "bso") return {synth::synth_bso(corpus::read_corpus(input), opt)};
  if (t == "dc") {
    if (looks_like_threads(input)) return {synth::synth_dc_threads(corpus::read_threads(input), opt)};
    return {synth::synth_dc_docs(corpus::read_corpus(input), opt)};
  }
  if (t == "ssp") return {synth::synth_ssp(corpus::read_corpus(input), opt)};
  if (t == "pdtb" || t == "pdtb-e" || t == "pdtb-i") {
    auto both = synth::adapt_pdtb(synth::read_pdtb(input));
    if (t == "pdtb-e") return {std::move(both.explicit_rel)};
    if (t == "pdtb-i") return {std::move(both.implicit_rel)};
    return {std::move(both.explicit_rel), std::move(both.implicit_rel)};
  }
  if (t == "rst") {
    const auto docs = synth::read_rst(input);
    return {synth::adapt_rst(docs, rst_dev_documents(docs, req.rst_dev_fraction, cfg.seed), cfg.rst_mode())};
  }
  throw InvalidValue("task", "unknown synthesis task '" + t + "'");
}

TrainOutput train_encoder(const RunConfig& cfg) {
  if (cfg.corpus_path.empty()) throw InvalidValue("corpus_path", "training needs a corpus");
  validate_paths(cfg);
  const auto docs = corpus::read_corpus(cfg.corpus_path);
  if (docs.empty()) throw corpus::EmptyCorpus();
  const corpus::Vocab vocab = corpus::build_vocab(docs, cfg.min_count);
  const auto vectors = cfg.vectors_path.empty()
                           ? corpus::random_word_vectors(vocab, static_cast<int>(cfg.word_dim), cfg.seed)
                           : corpus::load_word_vectors(cfg.vectors_path, vocab, static_cast<int>(cfg.word_dim), cfg.seed);
  const auto contexts = train::encode_contexts(corpus::context_windows(docs), vocab);
  const train::LossConfig lc = cfg.loss_config();

  TrainOutput out;
  out.checkpoint.params = train::make_encoder(vectors.table, cfg.hidden_dim, lc);
  out.checkpoint.vocab = vocab;
  out.checkpoint.seed = cfg.seed;
  for (int e = 0; e < cfg.epochs; ++e) {
    train::TrainLog log = train::train_epoch(contexts, lc, out.checkpoint.params);
    for (auto& r : log.records) r.step += out.log.steps;
    out.log.records.insert(out.log.records.end(), log.records.begin(), log.records.end());
    out.log.steps += log.steps;
    out.log.sdt_skipped += log.sdt_skipped;
  }

  auto& meta = out.checkpoint.meta;
  meta["profile"] = cfg.profile;
  meta["epochs"] = cfg.epochs;
  meta["steps"] = out.log.steps;
  meta["contexts"] = contexts.size();
  meta["vector_coverage"] = vectors.coverage;
  meta["losses"] = cfg.losses;
  meta["loss_weights"] = cfg.loss_weights;
  meta["batch_size"] = cfg.batch_size;
  return out;
}

std::vector<synth::Dataset> load_datasets(const std::filesystem::path& dir, const std::vector<std::string>& tasks) {
  if (!std::filesystem::is_directory(dir)) throw MissingPath(dir);
  std::vector<synth::Dataset> out;
  for (const auto& name : synth::list_datasets(dir))
    if (std::find(tasks.begin(), tasks.end(), synth::base_task(name)) != tasks.end())
      out.push_back(synth::read_dataset(dir, name));
  return out;
}

eval::EvalResult evaluate_dataset(const synth::Dataset& ds, eval::EmbeddingSource& source, const RunConfig& cfg,
                                  std::optional<eval::Construction> construction) {
  auto spec = eval::default_probe_spec(ds.name, ds.kind, static_cast<long>(ds.labels.size()), source.dim());
  if (construction) spec.construction = *construction;
  spec.l2_grid = cfg.probe_l2_grid;
  spec.seed = cfg.seed;

  auto features = [&](synth::Split s, std::vector<int>& labels) {
    const auto& rows = ds.split(s);
    labels.clear();
    for (const auto& inst : rows) labels.push_back(inst.label);
    return eval::feature_matrix(eval::embed_instances(rows, source), spec.construction);
  };
  std::vector<int> ytr, ydev, ytest;
  const auto xtr = features(synth::Split::kTrain, ytr);
  const auto xdev = features(synth::Split::kDev, ydev);
  const auto xtest = features(synth::Split::kTest, ytest);
  const auto probe = eval::train_probe(xtr, ytr, xdev, ydev, spec);
  return eval::evaluate_probe(probe, xtest, ytest, spec);
}

}  // namespace disco::cli
