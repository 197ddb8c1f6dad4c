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

#include "disco/cli/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <string_view>

#include "disco/common/io.hpp"
#include "disco/common/rng.hpp"

namespace disco::fixtures {

namespace {

constexpr std::array<std::string_view, 16> kSyllables = {"ka", "lo", "mi", "ne", "ru", "sa", "ti", "vo",
                                                         "ze", "pa", "do", "fe", "gu", "ha", "ji", "bo"};

constexpr std::array<std::string_view, 60> kCommon = {
    "the",   "of",   "and",   "a",     "to",    "in",    "is",    "was",     "for",    "on",    "that",  "with",
    "as",    "by",   "it",    "at",    "from",  "his",   "her",   "an",      "were",   "are",   "which", "this",
    "be",    "or",   "has",   "had",   "its",   "also",  "after", "first",   "new",    "two",   "their", "one",
    "other", "they", "not",   "but",   "been",  "he",    "she",   "between", "during", "into",  "most",  "more",
    "than",  "some", "such",  "many",  "these", "when",  "where", "while",   "would",  "who",   "all",   "there"};

constexpr std::array<std::string_view, 12> kHeadings = {"History",   "Geography", "Economy",  "Culture",
                                                        "Education", "Transport", "Climate",  "Politics",
                                                        "Sports",    "Media",     "Religion", "Demographics"};

// Index ranges of pseudo-word families.
constexpr std::size_t kLevelCue = 100;
constexpr std::size_t kSentenceCue = 200;
constexpr std::size_t kParagraphCue = 300;
constexpr std::size_t kHeadingCue = 400;
constexpr std::size_t kTopicBase = 1000;
constexpr std::size_t kTopicStride = 64;  // max words per topic
constexpr std::size_t kMotifBase = 8000;
constexpr std::size_t kMotifs = 800;
constexpr std::size_t kNameBase = 10000;

// Rank r drawn with weight 1/(r+1).
class Zipf {
 public:
  explicit Zipf(std::size_t n) : cdf_(n) {
    double acc = 0;
    for (std::size_t r = 0; r < n; ++r) cdf_[r] = acc += 1.0 / static_cast<double>(r + 1);
  }
  std::size_t operator()(Rng& rng) const {
    const double u = uniform_real(rng, 0.0, cdf_.back());
    return static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) { return lo + uniform_below(rng, hi - lo + 1); }
bool chance(Rng& rng, double p) { return uniform_real(rng, 0.0, 1.0) < p; }

std::string topic_word(std::size_t topic, std::size_t i) { return pseudo_word(kTopicBase + topic * kTopicStride + i); }

std::string render(std::vector<std::string> words, Rng& rng, bool shuffle_words = true) {
  if (shuffle_words) shuffle(std::span(words), rng);
  std::string s = join(words, " ");
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s + ".";
}

std::vector<std::string> common_words(Rng& rng, std::size_t n) {
  static const Zipf zipf(kCommon.size());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(kCommon[zipf(rng)]);
  return out;
}

std::vector<std::string> topic_words(Rng& rng, std::size_t topic, std::size_t n, std::size_t vocab = 16) {
  const Zipf zipf(vocab);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(topic_word(topic, zipf(rng)));
  return out;
}

}  // namespace

std::string pseudo_word(std::size_t index) {
  std::string digits;
  do {
    digits.insert(0, kSyllables[index % kSyllables.size()]);
    index /= kSyllables.size();
  } while (index > 0);
  while (digits.size() < 6) digits.insert(0, kSyllables[0]);
  return digits;
}

std::vector<corpus::Document> wiki_corpus(const WikiOptions& opt) {
  if (opt.documents == 0 || opt.topics == 0 || opt.min_sentences == 0 || opt.min_sentences > opt.max_sentences ||
      opt.words_per_topic < 10 || opt.words_per_topic > kTopicStride || opt.min_filler > opt.max_filler ||
      opt.topics * kTopicStride > kMotifBase - kTopicBase)
    throw ValidationError("invalid wiki fixture options");
  std::vector<corpus::Document> docs;
  for (std::size_t d = 0; d < opt.documents; ++d) {
    Rng rng = derive_rng(opt.seed, "wiki", d);
    const std::size_t topic = uniform_below(rng, opt.topics);
    corpus::Document doc;
    doc.id = "wiki" + std::to_string(d);
    doc.title_raw = topic_word(topic, uniform_below(rng, 5)) + " " + topic_word(topic, 5 + uniform_below(rng, 5));
    doc.title = corpus::make_sentence(doc.title_raw).tokens;
    doc.categories = {"topic-" + std::to_string(topic), "group-" + std::to_string(topic % 8),
                      "misc-" + std::to_string(uniform_below(rng, 12))};
    std::sort(doc.categories.begin(), doc.categories.end());
    doc.categories.erase(std::unique(doc.categories.begin(), doc.categories.end()), doc.categories.end());

    const std::size_t target = between(rng, opt.min_sentences, opt.max_sentences);
    std::size_t written = 0;
    std::size_t paragraph_index = 0;
    int level = 1;
    for (std::size_t s = 0; written < target; ++s) {
      corpus::Section sec;
      std::size_t heading = kHeadings.size();  // lead section: no title
      if (s > 0) {
        heading = uniform_below(rng, kHeadings.size());
        sec.title_raw = std::string(kHeadings[heading]);
        level = s == 1 ? 1 : std::clamp(level + static_cast<int>(uniform_below(rng, 3)) - 1, 1, 4);
      }
      sec.title = corpus::make_sentence(sec.title_raw).tokens;
      sec.level = level;
      const std::size_t paragraphs = between(rng, 1, 3);
      for (std::size_t p = 0; p < paragraphs && written < target; ++p, ++paragraph_index) {
        std::vector<std::string> motifs;
        for (std::size_t m = 0; m < opt.motif_tokens; ++m) motifs.push_back(pseudo_word(kMotifBase + uniform_below(rng, kMotifs)));
        corpus::Paragraph para;
        const std::size_t len = std::min(between(rng, 3, 7), target - written);
        for (std::size_t k = 0; k < len; ++k, ++written) {
          auto words = topic_words(rng, topic, opt.topic_tokens, opt.words_per_topic);
          words.insert(words.end(), motifs.begin(), motifs.end());
          const double cue = opt.cue_rate;
          if (chance(rng, cue)) words.push_back(pseudo_word(kLevelCue + static_cast<std::size_t>(sec.level)));
          if (chance(rng, cue)) words.push_back(pseudo_word(kSentenceCue + std::min<std::size_t>(k, 9)));
          if (chance(rng, cue)) words.push_back(pseudo_word(kParagraphCue + std::min<std::size_t>(paragraph_index, 15)));
          if (heading < kHeadings.size() && chance(rng, cue)) words.push_back(pseudo_word(kHeadingCue + heading));
          if (opt.names_per_document > 0 && chance(rng, opt.name_rate))
            words.push_back(pseudo_word(kNameBase + d * opt.names_per_document + uniform_below(rng, opt.names_per_document)));
          const auto filler = common_words(rng, between(rng, opt.min_filler, opt.max_filler));
          words.insert(words.end(), filler.begin(), filler.end());
          para.push_back(corpus::make_sentence(render(std::move(words), rng)));
        }
        sec.paragraphs.push_back(std::move(para));
      }
      doc.sections.push_back(std::move(sec));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<corpus::Thread> chat_threads(const ThreadOptions& opt) {
  if (opt.threads == 0 || opt.min_utterances == 0 || opt.min_utterances > opt.max_utterances)
    throw ValidationError("invalid thread fixture options");
  static constexpr std::array<std::string_view, 4> kSystem = {"=== alice joined the channel", "*** topic changed",
                                                              "[system] connection reset", "--> bob has joined"};
  static constexpr std::array<std::string_view, 4> kShort = {"ok", "thanks", "lol", "yes"};
  std::vector<corpus::Thread> out;
  for (std::size_t t = 0; t < opt.threads; ++t) {
    Rng rng = derive_rng(opt.seed, "thread", t);
    const std::size_t topic = uniform_below(rng, 30);
    corpus::Thread th;
    th.id = "thread" + std::to_string(t);
    const std::size_t n = between(rng, opt.min_utterances, opt.max_utterances);
    for (std::size_t u = 0; u < n; ++u) {
      std::string raw;
      if (chance(rng, 0.08)) {
        raw = std::string(kSystem[uniform_below(rng, kSystem.size())]);
      } else if (chance(rng, 0.08)) {
        raw = std::string(kShort[uniform_below(rng, kShort.size())]);
      } else {
        auto words = topic_words(rng, topic, between(rng, 1, 3));
        const auto filler = common_words(rng, between(rng, 3, 10));
        words.insert(words.end(), filler.begin(), filler.end());
        raw = render(std::move(words), rng);
      }
      th.utterances.push_back(corpus::make_sentence(raw));
    }
    out.push_back(std::move(th));
  }
  return out;
}

std::vector<corpus::Document> paper_corpus(const PaperOptions& opt) {
  if (opt.papers == 0) throw ValidationError("invalid paper fixture options");
  static constexpr std::array<std::string_view, 10> kAbstractCues = {
      "we", "propose", "present", "novel", "approach", "show", "paper", "demonstrate", "introduce", "outperforms"};
  static constexpr std::array<std::string_view, 12> kBodyCues = {"table",  "figure",   "section", "dataset",
                                                                 "baseline", "layer", "parameters", "training",
                                                                 "shown",  "compute", "denote",  "equation"};
  static constexpr std::array<std::string_view, 7> kBody = {"Related Work", "Model",    "Method",    "Experiments",
                                                            "Results",      "Analysis", "Discussion"};
  auto cue_sentence = [](Rng& rng, std::size_t topic, auto& cues) {
    std::vector<std::string> words;
    for (std::size_t i = 0, n = between(rng, 2, 3); i < n; ++i) words.emplace_back(cues[uniform_below(rng, cues.size())]);
    const auto tw = topic_words(rng, topic, 2);
    const auto filler = common_words(rng, between(rng, 4, 8));
    words.insert(words.end(), tw.begin(), tw.end());
    words.insert(words.end(), filler.begin(), filler.end());
    return corpus::make_sentence(render(std::move(words), rng));
  };
  auto section = [](std::string title, std::vector<corpus::Paragraph> paras) {
    corpus::Section s;
    s.title_raw = std::move(title);
    s.title = corpus::make_sentence(s.title_raw).tokens;
    s.paragraphs = std::move(paras);
    return s;
  };

  std::vector<corpus::Document> out;
  for (std::size_t i = 0; i < opt.papers; ++i) {
    Rng rng = derive_rng(opt.seed, "paper", i);
    const std::size_t topic = uniform_below(rng, 30);
    corpus::Document doc;
    doc.id = "paper" + std::to_string(i);
    doc.title_raw = topic_word(topic, 0) + " " + topic_word(topic, 1 + uniform_below(rng, 8));
    doc.title = corpus::make_sentence(doc.title_raw).tokens;
    doc.categories = {"cs-" + std::to_string(topic % 6)};

    corpus::Paragraph abstract;
    for (std::size_t k = 0, n = between(rng, 4, 6); k < n; ++k) abstract.push_back(cue_sentence(rng, topic, kAbstractCues));
    doc.sections.push_back(section("Abstract", {abstract}));

    auto body_paragraphs = [&](std::size_t count) {
      std::vector<corpus::Paragraph> paras;
      for (std::size_t p = 0; p < count; ++p) {
        corpus::Paragraph para;
        for (std::size_t k = 0, n = between(rng, 2, 4); k < n; ++k) {
          if (chance(rng, 0.05))
            para.push_back(corpus::make_sentence("x = y + z"));
          else
            para.push_back(cue_sentence(rng, topic, kBodyCues));
        }
        paras.push_back(std::move(para));
      }
      return paras;
    };
    doc.sections.push_back(section("Introduction", body_paragraphs(2)));
    std::vector<std::size_t> order(kBody.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    shuffle(std::span(order), rng);
    const std::size_t body = between(rng, 2, 4);
    std::sort(order.begin(), order.begin() + static_cast<long>(body));
    for (std::size_t k = 0; k < body; ++k) doc.sections.push_back(section(std::string(kBody[order[k]]), body_paragraphs(2)));
    doc.sections.push_back(section("Conclusion", body_paragraphs(1)));
    out.push_back(std::move(doc));
  }
  return out;
}

std::vector<synth::PdtbRecord> pdtb_records(const PdtbOptions& opt) {
  struct Sense {
    std::string_view label;
    std::array<std::string_view, 2> connectives;
    double weight;
  };
  static const std::vector<Sense> kSenses = {
      {"Comparison.Contrast", {"however", "but"}, 10},
      {"Comparison.Concession", {"although", "even though"}, 4},
      {"Contingency.Cause.Reason", {"because", "since"}, 8},
      {"Contingency.Cause.Result", {"so", "as a result"}, 6},
      {"Contingency.Condition", {"if", "unless"}, 3},
      {"Temporal.Asynchronous", {"after", "before"}, 5},
      {"Temporal.Synchrony", {"when", "while"}, 4},
      {"Expansion.Conjunction", {"also", "and"}, 12},
      {"Expansion.Instantiation", {"for example", "for instance"}, 4},
      {"Expansion.Restatement", {"specifically", "in fact"}, 5},
      {"Expansion.Alternative", {"instead", "or"}, 2},
      {"Expansion.List", {"finally", "first"}, 2},
      {"Comparison.Pragmatic contrast", {"nonetheless", "still"}, 0.05},
  };
  double total = 0;
  for (const auto& s : kSenses) total += s.weight;

  std::vector<synth::PdtbRecord> out;
  for (std::size_t i = 0; i < opt.records; ++i) {
    Rng rng = derive_rng(opt.seed, "pdtb", i);
    synth::PdtbRecord r;
    r.section = static_cast<int>(uniform_below(rng, 25));
    r.type = chance(rng, 0.5) ? "explicit" : "implicit";
    double u = uniform_real(rng, 0.0, total);
    std::size_t si = 0;
    while (si + 1 < kSenses.size() && u >= kSenses[si].weight) u -= kSenses[si++].weight;
    const auto& sense = kSenses[si];
    r.label = std::string(sense.label);
    r.connective = std::string(sense.connectives[uniform_below(rng, 2)]);
    const std::size_t topic = uniform_below(rng, 30);
    auto clause = [&] {
      auto words = topic_words(rng, topic, 2);
      const auto filler = common_words(rng, between(rng, 4, 9));
      words.insert(words.end(), filler.begin(), filler.end());
      shuffle(std::span(words), rng);
      return join(words, " ");
    };
    r.arg1 = render({clause()}, rng, false);
    const std::string body = clause();
    if (r.type == "explicit") {
      if (chance(rng, 0.6)) {
        std::string conn = r.connective;
        conn[0] = static_cast<char>(conn[0] - 'a' + 'A');
        r.arg2 = conn + " " + body + ".";
      } else {
        const auto words = split(body, ' ');
        const std::size_t at = 1 + uniform_below(rng, words.size() - 1);
        std::vector<std::string> w(words.begin(), words.end());
        w.insert(w.begin() + static_cast<long>(at), r.connective);
        r.arg2 = render(std::move(w), rng, false);
      }
    } else {
      r.arg2 = render({body}, rng, false);
    }
    char id[16];
    std::snprintf(id, sizeof id, "wsj_%02d%02d", r.section, static_cast<int>(uniform_below(rng, 100)));
    r.doc_id = id;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

synth::RstTree random_tree(Rng& rng, int lo, int hi) {
  synth::RstTree t;
  if (lo == hi) {
    t.edu = lo;
    return t;
  }
  const int size = hi - lo + 1;
  const int arity = size >= 3 && chance(rng, 0.2) ? 3 : 2;
  std::vector<int> cuts;  // child i covers [starts[i], starts[i+1]-1]
  while (static_cast<int>(cuts.size()) < arity - 1) {
    const int c = lo + 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(size - 1)));
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  int start = lo;
  for (int c : cuts) {
    t.children.push_back(random_tree(rng, start, c - 1));
    start = c;
  }
  t.children.push_back(random_tree(rng, start, hi));
  static const Zipf zipf(synth::kRstRelations.size());
  t.relation = std::string(synth::kRstRelations[zipf(rng)]);
  if (arity == 3) {
    t.nuclearity = "NNN";
  } else {
    const double u = uniform_real(rng, 0.0, 1.0);
    t.nuclearity = u < 0.5 ? "NS" : u < 0.75 ? "SN" : "NN";
  }
  return t;
}

}  // namespace

std::vector<synth::RstDocument> rst_documents(const RstOptions& opt) {
  if (opt.documents == 0 || opt.min_edus < 2 || opt.min_edus > opt.max_edus)
    throw ValidationError("invalid rst fixture options");
  std::vector<synth::RstDocument> out;
  for (std::size_t i = 0; i < opt.documents; ++i) {
    Rng rng = derive_rng(opt.seed, "rst", i);
    synth::RstDocument doc;
    doc.doc_id = "rst" + std::to_string(i);
    doc.split = chance(rng, opt.test_fraction) ? "test" : "train";
    const std::size_t topic = uniform_below(rng, 30);
    const std::size_t n = between(rng, opt.min_edus, opt.max_edus);
    for (std::size_t e = 0; e < n; ++e) {
      auto words = topic_words(rng, topic, 2);
      const auto filler = common_words(rng, between(rng, 2, 6));
      words.insert(words.end(), filler.begin(), filler.end());
      shuffle(std::span(words), rng);
      doc.edus.push_back(join(words, " "));
    }
    doc.tree = random_tree(rng, 1, static_cast<int>(n));
    out.push_back(std::move(doc));
  }
  return out;
}

std::string word_vector_file(const std::vector<corpus::Document>& docs, int dim, std::uint64_t seed) {
  if (dim <= 0) throw ValidationError("vector dim must be positive");
  std::set<std::string> tokens;
  for (const auto& d : docs) {
    tokens.insert(d.title.begin(), d.title.end());
    for (const auto& sec : d.sections) {
      tokens.insert(sec.title.begin(), sec.title.end());
      for (const auto& p : sec.paragraphs)
        for (const auto& s : p) tokens.insert(s.tokens.begin(), s.tokens.end());
    }
  }
  std::string out;
  char buf[32];
  for (const auto& t : tokens) {
    Rng rng = derive_rng(seed, "vector:" + t);
    out += t;
    for (int i = 0; i < dim; ++i) {
      std::snprintf(buf, sizeof buf, " %.5f", standard_normal(rng));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace disco::fixtures
