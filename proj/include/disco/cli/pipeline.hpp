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

#ifndef DISCO_CLI_PIPELINE_HPP_
#define DISCO_CLI_PIPELINE_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "disco/cli/config.hpp"
#include "disco/eval/embedding_source.hpp"
#include "disco/eval/features.hpp"
#include "disco/eval/probe.hpp"
#include "disco/nn/checkpoint.hpp"
#include "disco/synth/synthesizers.hpp"
#include "disco/train/trainer.hpp"

namespace disco::cli {

// Task names accepted by `synth`: the report tasks plus "pdtb" for both
// PDTB datasets at once.
struct SynthRequest {
  std::string task;
  std::filesystem::path input;
  std::string domain;
  synth::WindowOptions windows;
  double rst_dev_fraction = 0.1;
};

// Builds the datasets of one synthesis request. The input format for dc
// (documents or chat threads) is detected from the first record.
std::vector<synth::Dataset> synthesize(const SynthRequest& req, const RunConfig& cfg);

// Training documents of an RST corpus moved to dev: a seeded fraction of
// the train documents, at least one when there are two or more.
std::set<std::string> rst_dev_documents(const std::vector<synth::RstDocument>& docs, double fraction,
                                        std::uint64_t seed);

struct TrainOutput {
  nn::Checkpoint checkpoint;
  train::TrainLog log;
};

// Reads cfg.corpus_path (and cfg.vectors_path when set) and trains for
// cfg.epochs epochs.
TrainOutput train_encoder(const RunConfig& cfg);

// Datasets in dir whose task is selected by cfg.tasks.
std::vector<synth::Dataset> load_datasets(const std::filesystem::path& dir, const std::vector<std::string>& tasks);

// One probe per dataset with the task's default construction (or
// `construction` when given) and cfg's l2 grid and seed.
eval::EvalResult evaluate_dataset(const synth::Dataset& ds, eval::EmbeddingSource& source, const RunConfig& cfg,
                                  std::optional<eval::Construction> construction = std::nullopt);

// Entry point of the `disco` tool. Returns 0 on success, 1 on validation
// errors (bad arguments, config or input), 2 on runtime errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace disco::cli

#endif  // DISCO_CLI_PIPELINE_HPP_
