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

#include "disco/synth/synthesizers.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "disco/common/rng.hpp"

namespace disco::synth {

using corpus::Document;
using corpus::Sentence;
using corpus::Thread;

namespace {

// A document (or thread) reduced to the candidate windows it offers.
struct Source {
  std::string id;
  std::size_t index = 0;  // position in the input corpus
  std::vector<std::vector<Sentence>> windows;
};

Sentence cleaned(const Sentence& s) { return Sentence{clean_text(s.raw), s.tokens}; }

std::vector<Sentence> region_sentences(const Document& doc, Region region) {
  std::vector<Sentence> out;
  switch (region) {
    case Region::kFirstParagraph:
      for (const auto& sec : doc.sections)
        if (!sec.paragraphs.empty()) return sec.paragraphs.front();
      return out;
    case Region::kFirstSection:
      for (const auto& sec : doc.sections) {
        if (sec.paragraphs.empty()) continue;
        for (const auto& p : sec.paragraphs) out.insert(out.end(), p.begin(), p.end());
        return out;
      }
      return out;
    case Region::kDocument:
      for (const auto& ls : corpus::flatten(doc)) out.push_back(*ls.sentence);
      return out;
  }
  return out;
}

std::vector<std::vector<Sentence>> windows_of(const std::vector<Sentence>& seq, std::size_t width, bool all) {
  std::vector<std::vector<Sentence>> out;
  for (std::size_t start = 0; start + width <= seq.size(); start += width) {
    std::vector<Sentence> w;
    for (std::size_t i = 0; i < width; ++i) w.push_back(cleaned(seq[start + i]));
    out.push_back(std::move(w));
    if (!all) break;
  }
  return out;
}

std::vector<Source> document_sources(const std::vector<Document>& docs, std::size_t width, const WindowOptions& w) {
  std::vector<Source> out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto windows = windows_of(region_sentences(docs[i], w.region), width, w.all_windows);
    if (!windows.empty()) out.push_back(Source{docs[i].id, i, std::move(windows)});
  }
  return out;
}

std::string dataset_name(std::string_view task, const SynthOptions& opt) {
  std::string name(task);
  if (!opt.domain.empty()) name += "_" + opt.domain;
  return name;
}

// Shuffles sources and hands them to train, dev, test in turn until each
// split has at least `need(split)` units. Returns source indices per split.
template <typename CapacityFn, typename EnoughFn>
std::array<std::vector<std::size_t>, 3> allocate(std::size_t n_sources, std::uint64_t seed, std::string_view task,
                                                 CapacityFn capacity, EnoughFn enough, std::size_t needed_total) {
  std::vector<std::size_t> order(n_sources);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = derive_rng(seed, std::string("allocate:") + std::string(task));
  shuffle(std::span(order), rng);

  std::size_t available = 0;
  for (auto i : order) available += capacity(i);

  std::array<std::vector<std::size_t>, 3> out;
  std::size_t next = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    while (!enough(kSplits[s], out[s])) {
      if (next == order.size()) throw InsufficientDocuments(needed_total, available);
      out[s].push_back(order[next++]);
    }
  }
  return out;
}

// Picks `k` of `n` items without replacement; returned indices are sorted.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

struct Pick {
  const Source* source;
  std::size_t window;
};

// Exactly counts.of(split) windows from the split's sources, in canonical
// (document, window) order.
std::vector<Pick> select_windows(const std::vector<Source>& sources, const std::vector<std::size_t>& assigned,
                                 std::size_t need, std::uint64_t seed, std::string_view task, Split split) {
  std::vector<Pick> pool;
  for (auto si : assigned)
    for (std::size_t w = 0; w < sources[si].windows.size(); ++w) pool.push_back({&sources[si], w});
  Rng rng = derive_rng(seed, std::string("select:") + std::string(task) + ":" + std::string(split_name(split)));
  std::vector<Pick> out;
  for (auto i : sample_indices(pool.size(), need, rng)) out.push_back(pool[i]);
  return out;
}

// Balanced binary labels for n instances: (n+1)/2 ones, n/2 zeros.
std::vector<int> balanced_labels(std::size_t n, std::uint64_t seed, std::string_view task, Split split) {
  std::vector<int> labels(n, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>((n + 1) / 2), 1);
  Rng rng = derive_rng(seed, std::string("labels:") + std::string(task) + ":" + std::string(split_name(split)));
  shuffle(std::span(labels), rng);
  return labels;
}

void sort_canonical(std::vector<TaskInstance>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.instance_id < b.instance_id; });
}

template <typename Build>
Dataset synth_windows(const std::vector<Source>& sources, const SynthOptions& opt, std::string_view task,
                      TaskKind kind, LabelSpace labels, Build build) {
  const auto& c = opt.counts;
  auto alloc = allocate(
      sources.size(), opt.seed, task, [&](std::size_t i) { return sources[i].windows.size(); },
      [&](Split s, const std::vector<std::size_t>& got) {
        std::size_t n = 0;
        for (auto i : got) n += sources[i].windows.size();
        return n >= c.of(s);
      },
      c.total());

  Dataset ds;
  ds.name = dataset_name(task, opt);
  ds.kind = kind;
  ds.labels = std::move(labels);
  ds.labels.task = ds.name;
  for (std::size_t s = 0; s < 3; ++s) {
    const Split split = kSplits[s];
    std::vector<std::pair<std::string, Pick>> keyed;
    for (const auto& p : select_windows(sources, alloc[s], c.of(split), opt.seed, task, split))
      keyed.emplace_back(make_instance_id(ds.name, p.source->id, p.window), p);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    auto& out = ds.split(split);
    std::vector<const Pick*> by_id;
    for (const auto& [id, pick] : keyed) {
      TaskInstance inst;
      inst.kind = kind;
      inst.source_doc_id = pick.source->id;
      inst.instance_id = id;
      out.push_back(std::move(inst));
      by_id.push_back(&pick);
    }
    build(split, alloc[s], out, by_id);
  }
  check_disjoint(ds);
  return ds;
}

Rng instance_rng(std::uint64_t seed, const Pick& p, std::uint64_t task_salt) {
  return derive_rng(seed, p.source->id, task_salt * 1000003ULL + p.window);
}

}  // namespace

std::vector<Sentence> move_to_front(std::vector<Sentence> window, std::size_t pick) {
  std::rotate(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(pick),
              window.begin() + static_cast<std::ptrdiff_t>(pick) + 1);
  return window;
}

Dataset synth_sp(const std::vector<Document>& docs, const SynthOptions& opt) {
  const auto sources = document_sources(docs, 5, opt.windows);
  return synth_windows(sources, opt, "sp", TaskKind::kSentencePosition, position_labels("sp"),
                       [&](Split, const auto&, std::vector<TaskInstance>& out, const std::vector<const Pick*>& picks) {
                         for (std::size_t i = 0; i < out.size(); ++i) {
                           Rng rng = instance_rng(opt.seed, *picks[i], 1);
                           const auto pick = static_cast<std::size_t>(uniform_below(rng, 5));
                           out[i].sentences = move_to_front(picks[i]->source->windows[picks[i]->window], pick);
                           out[i].label = static_cast<int>(pick);
                         }
                       });
}

Dataset synth_bso(const std::vector<Document>& docs, const SynthOptions& opt) {
  const auto sources = document_sources(docs, 2, opt.windows);
  return synth_windows(sources, opt, "bso", TaskKind::kBinaryOrdering, binary_labels("bso", "swapped", "ordered"),
                       [&](Split split, const auto&, std::vector<TaskInstance>& out,
                           const std::vector<const Pick*>& picks) {
                         const auto labels = balanced_labels(out.size(), opt.seed, "bso", split);
                         for (std::size_t i = 0; i < out.size(); ++i) {
                           auto pair = picks[i]->source->windows[picks[i]->window];
                           if (labels[i] == 0) std::swap(pair[0], pair[1]);
                           out[i].sentences = std::move(pair);
                           out[i].label = labels[i];
                         }
                       });
}

double category_similarity(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty()) throw EmptyCategorySet();
  std::size_t inter = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

Dataset synth_dc_docs(const std::vector<Document>& docs, const SynthOptions& opt) {
  const auto sources = document_sources(docs, 6, opt.windows);
  for (const auto& s : sources)
    if (docs[s.index].categories.empty()) throw EmptyCategorySet();

  std::vector<std::vector<Sentence>> all_sentences(docs.size());
  auto sentences_of = [&](std::size_t doc) -> const std::vector<Sentence>& {
    auto& cache = all_sentences[doc];
    if (cache.empty())
      for (const auto& ls : corpus::flatten(docs[doc])) cache.push_back(cleaned(*ls.sentence));
    return cache;
  };

  return synth_windows(
      sources, opt, "dc", TaskKind::kCoherence, binary_labels("dc", "incoherent", "coherent"),
      [&](Split split, const std::vector<std::size_t>& assigned, std::vector<TaskInstance>& out,
          const std::vector<const Pick*>& picks) {
        const auto labels = balanced_labels(out.size(), opt.seed, "dc", split);
        // Distractors come from the same split so no document leaks across splits.
        std::vector<std::size_t> split_docs;
        for (auto si : assigned) split_docs.push_back(sources[si].index);
        std::sort(split_docs.begin(), split_docs.end());
        for (std::size_t i = 0; i < out.size(); ++i) {
          const Pick& p = *picks[i];
          out[i].sentences = p.source->windows[p.window];
          out[i].label = labels[i];
          if (labels[i] == 1) continue;
          Rng rng = instance_rng(opt.seed, p, 2);
          std::vector<std::size_t> foreign;
          for (auto d : split_docs)
            if (d != p.source->index) foreign.push_back(d);
          if (foreign.empty()) throw NoDistractorAvailable(p.source->id);
          const auto pool = sample_indices(foreign.size(), std::min(opt.dc_candidate_pool, foreign.size()), rng);
          const auto& cats = docs[p.source->index].categories;
          std::size_t best = foreign[pool.front()];
          double best_sim = -1.0;
          for (auto k : pool) {
            const auto d = foreign[k];
            const double sim = category_similarity(cats, docs[d].categories);
            if (sim > best_sim || (sim == best_sim && docs[d].id < docs[best].id)) {
              best = d;
              best_sim = sim;
            }
          }
          const auto& cand = sentences_of(best);
          const auto slot = 1 + static_cast<std::size_t>(uniform_below(rng, 4));  // 0-based 1..4
          out[i].sentences[slot] = cand[static_cast<std::size_t>(uniform_below(rng, cand.size()))];
          out[i].replaced_slot = static_cast<int>(slot) + 1;
          out[i].distractor_source = docs[best].id;
        }
      });
}

std::vector<Sentence> filter_utterances(const Thread& t, const ThreadFilter& f) {
  std::vector<Sentence> out;
  for (const auto& u : t.utterances) {
    if (u.tokens.size() < f.min_tokens || u.tokens.size() > f.max_tokens) continue;
    bool system = false;
    for (const auto& prefix : f.system_prefixes)
      if (u.raw.rfind(prefix, 0) == 0) system = true;
    if (!system) out.push_back(cleaned(u));
  }
  return out;
}

Dataset synth_dc_threads(const std::vector<Thread>& threads, const SynthOptions& opt) {
  std::vector<Source> sources;
  std::vector<std::vector<Sentence>> kept(threads.size());
  for (std::size_t i = 0; i < threads.size(); ++i) {
    kept[i] = filter_utterances(threads[i], opt.thread_filter);
    if (kept[i].size() < std::max<std::size_t>(opt.thread_filter.min_length, 6)) continue;
    auto windows = windows_of(kept[i], 6, opt.windows.all_windows);
    sources.push_back(Source{threads[i].id, i, std::move(windows)});
  }
  try {
    return synth_windows(
        sources, opt, "dc", TaskKind::kCoherence, binary_labels("dc", "incoherent", "coherent"),
        [&](Split split, const std::vector<std::size_t>& assigned, std::vector<TaskInstance>& out,
            const std::vector<const Pick*>& picks) {
          const auto labels = balanced_labels(out.size(), opt.seed, "dc", split);
          std::vector<std::size_t> split_threads;
          for (auto si : assigned) split_threads.push_back(sources[si].index);
          std::sort(split_threads.begin(), split_threads.end());
          for (std::size_t i = 0; i < out.size(); ++i) {
            const Pick& p = *picks[i];
            out[i].sentences = p.source->windows[p.window];
            out[i].label = labels[i];
            if (labels[i] == 1) continue;
            Rng rng = instance_rng(opt.seed, p, 3);
            if (split_threads.size() < 2) throw NoDistractorAvailable(p.source->id);
            std::size_t other = p.source->index;
            while (other == p.source->index)
              other = split_threads[static_cast<std::size_t>(uniform_below(rng, split_threads.size()))];
            const auto slot = 1 + static_cast<std::size_t>(uniform_below(rng, 4));
            const auto& cand = kept[other];
            out[i].sentences[slot] = cand[static_cast<std::size_t>(uniform_below(rng, cand.size()))];
            out[i].replaced_slot = static_cast<int>(slot) + 1;
            out[i].distractor_source = threads[other].id;
          }
        });
  } catch (const InsufficientThreads&) {
    throw;
  } catch (const InsufficientDocuments& e) {
    throw InsufficientThreads(e.needed(), e.available());
  }
}

bool is_easy_sentence(const Sentence& s, const SentenceFilter& f) {
  if (s.tokens.size() < f.min_tokens) return true;
  std::size_t non_alpha = 0;
  for (const auto& t : s.tokens) {
    const bool letters = std::all_of(t.begin(), t.end(), [](char c) {
      const auto u = static_cast<unsigned char>(c);
      return std::isalpha(u) || c == '\'' || c == '-' || u >= 0x80;
    });
    const bool word = letters && (t.size() > 1 || t == "a" || t == "i");
    if (!word) ++non_alpha;
  }
  return static_cast<double>(non_alpha) > f.max_non_alpha * static_cast<double>(s.tokens.size());
}

namespace {

std::string lower_trimmed(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

bool is_framing_section(const corpus::Section& sec) {
  for (const auto& t : sec.title)
    if (t.rfind("introduction", 0) == 0 || t.rfind("conclusion", 0) == 0) return true;
  return false;
}

struct PaperPools {
  std::vector<std::pair<std::size_t, Sentence>> abstract;  // (flat index, sentence)
  std::vector<std::pair<std::size_t, Sentence>> middle;
};

}  // namespace

Dataset synth_ssp(const std::vector<Document>& papers, const SynthOptions& opt) {
  std::vector<PaperPools> pools(papers.size());
  for (std::size_t p = 0; p < papers.size(); ++p) {
    const auto& doc = papers[p];
    int abstract_idx = -1;
    for (std::size_t s = 0; s < doc.sections.size(); ++s)
      if (lower_trimmed(doc.sections[s].title_raw) == "abstract") {
        abstract_idx = static_cast<int>(s);
        break;
      }
    if (abstract_idx < 0) throw NoAbstract(doc.id);
    std::size_t flat = 0;
    for (std::size_t s = 0; s < doc.sections.size(); ++s) {
      const auto& sec = doc.sections[s];
      const bool is_abstract = static_cast<int>(s) == abstract_idx;
      const bool is_middle = !is_abstract && s != 0 && s + 1 != doc.sections.size() && !is_framing_section(sec);
      for (const auto& para : sec.paragraphs)
        for (const auto& sent : para) {
          if (!is_easy_sentence(sent, opt.ssp_filter)) {
            if (is_abstract) pools[p].abstract.emplace_back(flat, cleaned(sent));
            if (is_middle) pools[p].middle.emplace_back(flat, cleaned(sent));
          }
          ++flat;
        }
    }
  }

  const auto& c = opt.counts;
  auto need_pos = [&](Split s) { return (c.of(s) + 1) / 2; };
  auto need_neg = [&](Split s) { return c.of(s) / 2; };
  auto alloc = allocate(
      papers.size(), opt.seed, "ssp",
      [&](std::size_t i) { return std::min(pools[i].abstract.size(), pools[i].middle.size()) * 2; },
      [&](Split s, const std::vector<std::size_t>& got) {
        std::size_t pos = 0;
        std::size_t neg = 0;
        for (auto i : got) {
          pos += pools[i].abstract.size();
          neg += pools[i].middle.size();
        }
        return pos >= need_pos(s) && neg >= need_neg(s);
      },
      c.total());

  Dataset ds;
  ds.name = dataset_name("ssp", opt);
  ds.kind = TaskKind::kSectionPrediction;
  ds.labels = binary_labels(ds.name, "other", "abstract");
  for (std::size_t s = 0; s < 3; ++s) {
    const Split split = kSplits[s];
    auto sorted = alloc[s];
    std::sort(sorted.begin(), sorted.end());
    auto& out = ds.split(split);
    for (int label : {1, 0}) {
      std::vector<std::pair<std::size_t, const Sentence*>> pool;  // (paper, sentence)
      std::vector<std::size_t> flat_idx;
      for (auto p : sorted)
        for (const auto& [flat, sent] : label == 1 ? pools[p].abstract : pools[p].middle) {
          pool.emplace_back(p, &sent);
          flat_idx.push_back(flat);
        }
      Rng rng = derive_rng(opt.seed, "ssp:" + std::to_string(label) + ":" + std::string(split_name(split)));
      for (auto i : sample_indices(pool.size(), label == 1 ? need_pos(split) : need_neg(split), rng)) {
        TaskInstance inst;
        inst.kind = TaskKind::kSectionPrediction;
        inst.source_doc_id = papers[pool[i].first].id;
        inst.instance_id = make_instance_id(ds.name, inst.source_doc_id, flat_idx[i]);
        inst.sentences = {*pool[i].second};
        inst.label = label;
        out.push_back(std::move(inst));
      }
    }
    sort_canonical(out);
  }
  check_disjoint(ds);
  return ds;
}

Dataset split_by_document(std::string name, TaskKind kind, LabelSpace labels, std::vector<TaskInstance> instances,
                          const std::map<std::string, Split>& assignment) {
  Dataset ds;
  ds.name = std::move(name);
  ds.kind = kind;
  ds.labels = std::move(labels);
  for (auto& inst : instances) {
    const auto it = assignment.find(inst.source_doc_id);
    if (it == assignment.end()) throw UnassignedDocument(inst.source_doc_id);
    ds.split(it->second).push_back(std::move(inst));
  }
  check_disjoint(ds);
  return ds;
}

}  // namespace disco::synth
