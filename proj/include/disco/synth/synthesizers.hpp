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

#ifndef DISCO_SYNTH_SYNTHESIZERS_HPP_
#define DISCO_SYNTH_SYNTHESIZERS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "disco/corpus/document.hpp"
#include "disco/synth/task_instance.hpp"

namespace disco::synth {

struct Counts {
  std::size_t train = 10000;
  std::size_t dev = 4000;
  std::size_t test = 4000;

  std::size_t of(Split s) const { return s == Split::kTrain ? train : s == Split::kDev ? dev : test; }
  std::size_t total() const { return train + dev + test; }
};

// Where windows are taken from inside each document.
enum class Region { kFirstParagraph, kFirstSection, kDocument };

struct WindowOptions {
  Region region = Region::kFirstParagraph;
  // false: only the first window of the region; true: every non-overlapping
  // window (for small corpora).
  bool all_windows = false;
};

struct ThreadFilter {
  std::size_t min_tokens = 3;
  std::size_t max_tokens = 60;
  std::vector<std::string> system_prefixes{"===", "***", "-->", "<--", "[system]"};
  std::size_t min_length = 6;
};

struct SentenceFilter {
  std::size_t min_tokens = 5;
  double max_non_alpha = 0.4;
};

struct SynthOptions {
  std::uint64_t seed = 13;
  Counts counts;
  WindowOptions windows;
  std::size_t dc_candidate_pool = 1000;
  ThreadFilter thread_filter;
  SentenceFilter ssp_filter;
  std::string domain;  // optional suffix for the dataset name
};

Dataset synth_sp(const std::vector<corpus::Document>& docs, const SynthOptions& opt);
Dataset synth_bso(const std::vector<corpus::Document>& docs, const SynthOptions& opt);
Dataset synth_dc_docs(const std::vector<corpus::Document>& docs, const SynthOptions& opt);
Dataset synth_dc_threads(const std::vector<corpus::Thread>& threads, const SynthOptions& opt);
Dataset synth_ssp(const std::vector<corpus::Document>& papers, const SynthOptions& opt);

class EmptyCategorySet : public ValidationError {
 public:
  EmptyCategorySet() : ValidationError("category set is empty") {}
};

class NoDistractorAvailable : public RuntimeError {
 public:
  explicit NoDistractorAvailable(const std::string& doc)
      : RuntimeError("no distractor document available for " + doc) {}
};

class InsufficientThreads : public InsufficientDocuments {
 public:
  using InsufficientDocuments::InsufficientDocuments;
};

class NoAbstract : public ValidationError {
 public:
  explicit NoAbstract(const std::string& doc) : ValidationError("paper has no Abstract section: " + doc), doc_(doc) {}
  const std::string& doc_id() const { return doc_; }

 private:
  std::string doc_;
};

class UnassignedDocument : public ValidationError {
 public:
  explicit UnassignedDocument(const std::string& doc)
      : ValidationError("instance from unassigned document: " + doc), doc_(doc) {}
  const std::string& doc_id() const { return doc_; }

 private:
  std::string doc_;
};

// Jaccard overlap |a ∩ b| / |a ∪ b| of two sorted, unique category lists.
double category_similarity(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Routes each instance to its document's split and verifies disjointness.
Dataset split_by_document(std::string name, TaskKind kind, LabelSpace labels, std::vector<TaskInstance> instances,
                          const std::map<std::string, Split>& assignment);

// "Too easy" sentences for section prediction: fewer than min_tokens
// tokens, or more than max_non_alpha of tokens that are not words. A word is
// alphabetic and either longer than one letter or one of "a"/"i", so
// single-letter variables count as symbols.
bool is_easy_sentence(const corpus::Sentence& s, const SentenceFilter& f);

// Thread utterances kept by the chat heuristics, in order.
std::vector<corpus::Sentence> filter_utterances(const corpus::Thread& t, const ThreadFilter& f);

// SP construction rule: the sentence at `pick` moves to the front.
std::vector<corpus::Sentence> move_to_front(std::vector<corpus::Sentence> window, std::size_t pick);

}  // namespace disco::synth

#endif  // DISCO_SYNTH_SYNTHESIZERS_HPP_
