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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "disco/cli/fixtures.hpp"
#include "disco/common/io.hpp"
#include "disco/corpus/contexts.hpp"
#include "disco/corpus/corpus_io.hpp"
#include "disco/corpus/tokenize.hpp"
#include "disco/corpus/vocab.hpp"
#include "disco/corpus/word_vectors.hpp"

using namespace disco;
using namespace disco::corpus;
namespace fs = std::filesystem;

namespace {

using Strings = std::vector<std::string>;

std::string doc_line(const std::string& id, const std::vector<std::vector<std::string>>& paragraphs, int level = 1) {
  std::string paras;
  for (const auto& p : paragraphs) {
    std::string s;
    for (const auto& x : p) s += (s.empty() ? "" : ",") + ("\"" + x + "\"");
    paras += (paras.empty() ? "" : ",") + ("[" + s + "]");
  }
  return "{\"id\":\"" + id + "\",\"title\":\"Doc " + id + "\",\"categories\":[\"b\",\"a\"],\"sections\":[{\"title\":\"Intro\",\"level\":" +
         std::to_string(level) + ",\"paragraphs\":[" + paras + "]}]}";
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("disco_unit_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("The EC's agency.") == Strings{"the", "ec's", "agency", "."});
  CHECK(tokenize("").empty());
  CHECK(tokenize("  \t ").empty());
  CHECK(tokenize("(Hello, world!)") == Strings{"(", "hello", ",", "world", "!", ")"});
  CHECK(tokenize("pi is 3.14") == Strings{"pi", "is", "3.14"});
  for (const char* raw : {"The EC's agency.", "\"Quoted,\" she said...", "x = y + z", "a--b (c) [d]."}) {
    const auto once = tokenize(raw);
    CHECK(tokenize(join(once, " ")) == once);
  }
}

TEST_CASE("parse_corpus") {
  SUBCASE("one record, two sentences") {
    const auto docs = parse_corpus(doc_line("d1", {{"First one.", "Second one."}}));
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].sentence_count() == 2);
    CHECK(docs[0].categories == Strings{"a", "b"});
    CHECK(docs[0].sections[0].paragraphs[0][1].tokens == Strings{"second", "one", "."});
  }
  SUBCASE("empty stream") { CHECK(parse_corpus("").empty()); }
  SUBCASE("level 8 rejected") {
    try {
      parse_corpus(doc_line("d1", {{"A b."}}, 8));
      FAIL("expected LevelOutOfRange");
    } catch (const LevelOutOfRange& e) {
      CHECK(e.level() == 8);
    }
    CHECK_NOTHROW(parse_corpus(doc_line("d1", {{"A b."}}, 7)));
  }
  SUBCASE("duplicate id") {
    CHECK_THROWS_AS(parse_corpus(doc_line("d1", {{"A."}}) + "\n" + doc_line("d1", {{"B."}})), DuplicateId);
  }
  SUBCASE("malformed record reports its line") {
    try {
      parse_corpus(doc_line("d1", {{"A."}}) + "\n\n{\"id\": 3}\n");
      FAIL("expected MalformedRecord");
    } catch (const MalformedRecord& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_corpus("not json"), MalformedRecord);
  }
  SUBCASE("round trip") {
    const auto docs = fixtures::wiki_corpus({.documents = 5, .min_sentences = 10, .max_sentences = 20});
    CHECK(parse_corpus(serialize_corpus(docs)) == docs);
  }
  SUBCASE("threads round trip") {
    const auto threads = fixtures::chat_threads({.threads = 4});
    CHECK(parse_threads(serialize_threads(threads)) == threads);
  }
}

TEST_CASE("build_vocab") {
  const auto docs = parse_corpus(doc_line("d1", {{"a a b"}}));
  SUBCASE("threshold") {
    const Vocab v2 = build_vocab(docs, 2);
    CHECK(v2.contains("a"));
    CHECK_FALSE(v2.contains("b"));
    CHECK(v2.index("b") == Vocab::kUnknownIndex);
    const Vocab v1 = build_vocab(docs, 1);
    CHECK(v1.contains("a"));
    CHECK(v1.contains("b"));
    CHECK(v1.index("a") < v1.index("b"));  // more frequent first
  }
  SUBCASE("specials") {
    const Vocab v = build_vocab(docs, 1);
    CHECK(v.token(Vocab::kUnknownIndex) == Vocab::kUnknown);
    CHECK(v.token(Vocab::kPaddingIndex) == Vocab::kPadding);
    CHECK(Vocab::kUnknownIndex != Vocab::kPaddingIndex);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v.index(v.token(static_cast<int>(i))) == static_cast<int>(i));
  }
  SUBCASE("determinism and lexicographic ties") {
    const auto big = fixtures::wiki_corpus({.documents = 6, .min_sentences = 10, .max_sentences = 12});
    CHECK(build_vocab(big, 1).tokens() == build_vocab(big, 1).tokens());
    const Vocab t = build_vocab(parse_corpus(doc_line("d1", {{"zeta alpha mid"}})), 1);
    CHECK(t.index("alpha") < t.index("mid"));
    CHECK(t.index("mid") < t.index("zeta"));
  }
  SUBCASE("empty corpus") { CHECK_THROWS_AS(build_vocab({}, 1), EmptyCorpus); }
}

TEST_CASE("load_word_vectors") {
  const auto docs = parse_corpus(doc_line("d1", {{"a c"}}));
  const Vocab vocab = build_vocab(docs, 1);
  const auto path = temp_file("vectors.txt", "a 1.0 2.0\nzzz 3.0 4.0\n");
  SUBCASE("copy and coverage") {
    const auto wv = load_word_vectors(path, vocab, 2, 13);
    CHECK(wv.coverage == 1);
    CHECK(wv.table(vocab.index("a"), 0) == 1.0f);
    CHECK(wv.table(vocab.index("a"), 1) == 2.0f);
    const auto c = wv.table.row(vocab.index("c"));
    CHECK(c.cwiseAbs().maxCoeff() <= kOovInitBound);
    CHECK(c.cwiseAbs().maxCoeff() > 0.0f);
    CHECK(wv.table.row(Vocab::kPaddingIndex).isZero());
  }
  SUBCASE("dimension mismatch") {
    try {
      load_word_vectors(path, vocab, 3, 13);
      FAIL("expected VectorDimMismatch");
    } catch (const VectorDimMismatch& e) {
      CHECK(e.expected() == 3);
      CHECK(e.found() == 2);
    }
  }
  SUBCASE("word2vec header skipped") {
    const auto p2 = temp_file("vectors_w2v.txt", "2 2\na 1.0 2.0\nc 0.5 0.5\n");
    CHECK(load_word_vectors(p2, vocab, 2, 13).coverage == 2);
  }
  SUBCASE("seeded") {
    CHECK(load_word_vectors(path, vocab, 2, 13).table == load_word_vectors(path, vocab, 2, 13).table);
    CHECK(load_word_vectors(path, vocab, 2, 13).table != load_word_vectors(path, vocab, 2, 14).table);
  }
  SUBCASE("unreadable file") { CHECK_THROWS_AS(load_word_vectors("/nonexistent/v.txt", vocab, 2, 13), RuntimeError); }
}

TEST_CASE("context_windows") {
  SUBCASE("three sentences") {
    const auto ctx = context_windows(parse_corpus(doc_line("d", {{"A.", "B.", "C."}}))[0]);
    REQUIRE(ctx.size() == 1);
    CHECK(ctx[0].target.raw == "B.");
    CHECK(ctx[0].prev.raw == "A.");
    CHECK(ctx[0].next.raw == "C.");
    CHECK(ctx[0].sent_pos == 1);
    CHECK(ctx[0].para_pos == 0);
    CHECK(ctx[0].nesting_level == 1);
    CHECK(ctx[0].section_title == Strings{"intro"});
    CHECK(ctx[0].doc_title == Strings{"doc", "d"});
  }
  SUBCASE("two sentences") { CHECK(context_windows(parse_corpus(doc_line("d", {{"A.", "B."}}))[0]).empty()); }
  SUBCASE("two paragraphs") {
    const auto ctx = context_windows(parse_corpus(doc_line("d", {{"A.", "B."}, {"C.", "D."}}))[0]);
    REQUIRE(ctx.size() == 2);
    CHECK(ctx[1].target.raw == "C.");
    CHECK(ctx[1].sent_pos == 0);
    CHECK(ctx[1].para_pos == 1);
  }
  SUBCASE("count and adjacency over a fixture") {
    const auto docs = fixtures::wiki_corpus({.documents = 8, .min_sentences = 5, .max_sentences = 30});
    std::size_t expected = 0;
    for (const auto& d : docs) expected += d.sentence_count() > 2 ? d.sentence_count() - 2 : 0;
    const auto all = context_windows(docs);
    CHECK(all.size() == expected);
    for (const auto& d : docs) {
      const auto flat = flatten(d);
      const auto ctx = context_windows(d);
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        CHECK(*flat[i].sentence == ctx[i].prev);
        CHECK(*flat[i + 1].sentence == ctx[i].target);
        CHECK(*flat[i + 2].sentence == ctx[i].next);
        CHECK(ctx[i].nesting_level >= 1);
        CHECK(ctx[i].nesting_level <= 7);
      }
    }
  }
}
