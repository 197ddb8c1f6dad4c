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

#ifndef DISCO_CLI_FIXTURES_HPP_
#define DISCO_CLI_FIXTURES_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "disco/corpus/document.hpp"
#include "disco/synth/pdtb.hpp"
#include "disco/synth/rst.hpp"

// Seeded synthetic corpora in the input formats the pipeline reads. The wiki
// generator plants learnable signal for every training objective: topic words
// shared within a document, paragraph motif words shared by neighbouring
// sentences, and cue words tied to nesting level, sentence position,
// paragraph position and section heading.
namespace disco::fixtures {

struct WikiOptions {
  std::size_t documents = 200;
  std::size_t min_sentences = 140;
  std::size_t max_sentences = 180;
  std::size_t topics = 30;
  std::size_t words_per_topic = 12;
  std::size_t topic_tokens = 8;   // per sentence
  std::size_t motif_tokens = 0;   // per sentence, shared within a paragraph
  std::size_t min_filler = 1;
  std::size_t max_filler = 2;
  double cue_rate = 0.9;
  std::size_t names_per_document = 8;  // rare document-specific tokens
  double name_rate = 0.2;              // chance that a sentence mentions one
  std::uint64_t seed = 13;
};

std::vector<corpus::Document> wiki_corpus(const WikiOptions& opt);

struct ThreadOptions {
  std::size_t threads = 300;
  std::size_t min_utterances = 10;
  std::size_t max_utterances = 20;
  std::uint64_t seed = 13;
};

std::vector<corpus::Thread> chat_threads(const ThreadOptions& opt);

struct PaperOptions {
  std::size_t papers = 200;
  std::uint64_t seed = 13;
};

// Every paper has an Abstract, an Introduction, two to four body sections and
// a Conclusion.
std::vector<corpus::Document> paper_corpus(const PaperOptions& opt);

struct PdtbOptions {
  std::size_t records = 3000;
  std::uint64_t seed = 13;
};

std::vector<synth::PdtbRecord> pdtb_records(const PdtbOptions& opt);

struct RstOptions {
  std::size_t documents = 60;
  std::size_t min_edus = 4;
  std::size_t max_edus = 12;
  double test_fraction = 0.2;
  std::uint64_t seed = 13;
};

std::vector<synth::RstDocument> rst_documents(const RstOptions& opt);

// Pretrained-style vector file ("token v1 ... vd" per line) for every token
// of the documents: standard normal coordinates, so vectors have a norm
// comparable to common pretrained embeddings.
std::string word_vector_file(const std::vector<corpus::Document>& docs, int dim, std::uint64_t seed);

// Letters-only pseudo-word for an index; distinct indices give distinct words.
std::string pseudo_word(std::size_t index);

}  // namespace disco::fixtures

#endif  // DISCO_CLI_FIXTURES_HPP_
