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

#include <algorithm>
#include <filesystem>
#include <map>

#include "disco/cli/fixtures.hpp"
#include "disco/corpus/corpus_io.hpp"
#include "disco/synth/dataset_io.hpp"
#include "disco/synth/pdtb.hpp"
#include "disco/synth/rst.hpp"
#include "disco/synth/synthesizers.hpp"

using namespace disco;
using namespace disco::synth;
namespace fs = std::filesystem;

namespace {

std::vector<Sentence> letters(const std::string& s) {
  std::vector<Sentence> out;
  for (char c : s) out.push_back(corpus::make_sentence(std::string(1, c)));
  return out;
}

std::string raws(const std::vector<Sentence>& v) {
  std::string s;
  for (const auto& x : v) s += x.raw;
  return s;
}

const std::vector<corpus::Document>& wiki() {
  static const auto docs = fixtures::wiki_corpus({.documents = 120, .min_sentences = 30, .max_sentences = 50});
  return docs;
}

SynthOptions small_opts(std::size_t tr, std::size_t dv, std::size_t te) {
  SynthOptions o;
  o.counts = {tr, dv, te};
  o.windows = {Region::kDocument, true};
  return o;
}

// Position of a sentence run inside the flattened document, or -1.
long find_run(const corpus::Document& d, const std::vector<Sentence>& run) {
  const auto flat = corpus::flatten(d);
  for (std::size_t i = 0; i + run.size() <= flat.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < run.size() && ok; ++k) ok = *flat[i + k].sentence == run[k];
    if (ok) return static_cast<long>(i);
  }
  return -1;
}

std::map<std::string, const corpus::Document*> by_id(const std::vector<corpus::Document>& docs) {
  std::map<std::string, const corpus::Document*> m;
  for (const auto& d : docs) m[d.id] = &d;
  return m;
}

void check_balanced(const Dataset& ds) {
  for (Split s : kSplits) {
    long pos = 0, n = static_cast<long>(ds.split(s).size());
    for (const auto& i : ds.split(s)) pos += i.label;
    CHECK(std::abs(2 * pos - n) <= 1);
  }
}

PdtbRecord rec(int section, std::string type, std::string label, std::string doc = "") {
  PdtbRecord r;
  r.section = section;
  r.type = std::move(type);
  r.arg1 = "Sales rose faster in 1987.";
  r.arg2 = "But it remains to be seen.";
  r.connective = r.type == "explicit" ? "But" : "";
  r.label = std::move(label);
  r.doc_id = doc.empty() ? "wsj_" + std::to_string(section) : doc;
  return r;
}

RstTree leaf(int e) {
  RstTree t;
  t.edu = e;
  return t;
}

RstTree node(std::string rel, std::string nuc, std::vector<RstTree> kids) {
  RstTree t;
  t.relation = std::move(rel);
  t.nuclearity = std::move(nuc);
  t.children = std::move(kids);
  return t;
}

}  // namespace

TEST_CASE("sentence position construction rule") {
  CHECK(raws(move_to_front(letters("ABCDE"), 3)) == "DABCE");
  CHECK(raws(move_to_front(letters("ABCDE"), 0)) == "ABCDE");
  CHECK(raws(move_to_front(letters("ABCDE"), 4)) == "EABCD");
}

TEST_CASE("category similarity") {
  CHECK(category_similarity({"X", "Y"}, {"X", "Y"}) == doctest::Approx(1.0));
  CHECK(category_similarity({"X", "Y"}, {"Y", "Z"}) == doctest::Approx(1.0 / 3.0));
  CHECK(category_similarity({"X"}, {"Z"}) == 0.0);
  CHECK_THROWS_AS(category_similarity({}, {"Z"}), EmptyCategorySet);
}

TEST_CASE("synth_sp") {
  const auto ds = synth_sp(wiki(), small_opts(300, 100, 100));
  CHECK(ds.name == "sp");
  CHECK(ds.labels.size() == 5);
  CHECK(ds.train.size() == 300);
  CHECK(ds.dev.size() == 100);
  CHECK(ds.test.size() == 100);
  CHECK_NOTHROW(check_disjoint(ds));
  const auto docs = by_id(wiki());
  for (const auto& inst : ds.train) {
    REQUIRE(inst.sentences.size() == 5);
    REQUIRE((inst.label >= 0 && inst.label <= 4));
    // Undo the move: the front sentence returns to position `label`.
    auto original = std::vector<Sentence>(inst.sentences.begin() + 1, inst.sentences.end());
    original.insert(original.begin() + inst.label, inst.sentences[0]);
    CHECK(find_run(*docs.at(inst.source_doc_id), original) >= 0);
  }
  SUBCASE("determinism") { CHECK(render_dataset(ds) == render_dataset(synth_sp(wiki(), small_opts(300, 100, 100)))); }
  SUBCASE("seed matters") {
    auto o = small_opts(300, 100, 100);
    o.seed = 99;
    CHECK(render_dataset(ds) != render_dataset(synth_sp(wiki(), o)));
  }
  SUBCASE("insufficient documents") {
    try {
      synth_sp(wiki(), small_opts(100000, 10, 10));
      FAIL("expected InsufficientDocuments");
    } catch (const InsufficientDocuments& e) {
      CHECK(e.needed() == 100020);
      CHECK(e.available() < e.needed());
    }
  }
  SUBCASE("first-paragraph windows come from the start of the document") {
    SynthOptions o;
    o.counts = {40, 10, 10};
    const auto first = synth_sp(wiki(), o);
    for (const auto& inst : first.train) {
      auto original = std::vector<Sentence>(inst.sentences.begin() + 1, inst.sentences.end());
      original.insert(original.begin() + inst.label, inst.sentences[0]);
      CHECK(find_run(*docs.at(inst.source_doc_id), original) == 0);
    }
  }
}

TEST_CASE("synth_bso") {
  const auto ds = synth_bso(wiki(), small_opts(301, 100, 100));
  CHECK(ds.train.size() == 301);
  check_balanced(ds);
  CHECK_NOTHROW(check_disjoint(ds));
  const auto docs = by_id(wiki());
  for (const auto& inst : ds.test) {
    REQUIRE(inst.sentences.size() == 2);
    auto pair = inst.sentences;
    if (inst.label == 0) std::swap(pair[0], pair[1]);
    CHECK(find_run(*docs.at(inst.source_doc_id), pair) >= 0);
  }
}

TEST_CASE("synth_dc_docs") {
  const auto ds = synth_dc_docs(wiki(), small_opts(200, 60, 60));
  check_balanced(ds);
  CHECK_NOTHROW(check_disjoint(ds));
  const auto docs = by_id(wiki());
  for (Split s : kSplits) {
    for (const auto& inst : ds.split(s)) {
      REQUIRE(inst.sentences.size() == 6);
      if (inst.label == 1) {
        CHECK(inst.replaced_slot == 0);
        CHECK(find_run(*docs.at(inst.source_doc_id), inst.sentences) >= 0);
        continue;
      }
      CHECK(inst.replaced_slot >= 2);
      CHECK(inst.replaced_slot <= 5);
      CHECK(inst.distractor_source != inst.source_doc_id);
      for (Split other : kSplits)
        if (other != s) CHECK(ds.doc_ids(other).count(inst.distractor_source) == 0);
      // Restoring the replaced slot from the source document gives a real window.
      const auto flat = corpus::flatten(*docs.at(inst.source_doc_id));
      std::vector<Sentence> head(inst.sentences.begin(), inst.sentences.begin() + inst.replaced_slot - 1);
      const long at = find_run(*docs.at(inst.source_doc_id), head);
      REQUIRE(at >= 0);
      auto restored = inst.sentences;
      restored[static_cast<std::size_t>(inst.replaced_slot - 1)] =
          *flat[static_cast<std::size_t>(at + inst.replaced_slot - 1)].sentence;
      CHECK(find_run(*docs.at(inst.source_doc_id), restored) >= 0);
      const auto& distractor_doc = *docs.at(inst.distractor_source);
      CHECK(find_run(distractor_doc, {inst.sentences[static_cast<std::size_t>(inst.replaced_slot - 1)]}) >= 0);
    }
  }
}

TEST_CASE("synth_dc_threads") {
  const auto threads = fixtures::chat_threads({.threads = 200});
  const auto ds = synth_dc_threads(threads, small_opts(100, 30, 30));
  check_balanced(ds);
  CHECK_NOTHROW(check_disjoint(ds));
  for (const auto& inst : ds.train)
    if (inst.label == 0) {
      CHECK(inst.distractor_source != inst.source_doc_id);
      CHECK(inst.replaced_slot >= 2);
      CHECK(inst.replaced_slot <= 5);
    }
  SUBCASE("utterance filter") {
    corpus::Thread t;
    t.id = "t";
    for (const char* u : {"=== alice joined", "ok", "how do i mount a drive", "*** topic changed", "try sudo mount -a"})
      t.utterances.push_back(corpus::make_sentence(u));
    const auto kept = filter_utterances(t, ThreadFilter{});
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].raw == "how do i mount a drive");
  }
  SUBCASE("too few threads") {
    CHECK_THROWS_AS(synth_dc_threads(fixtures::chat_threads({.threads = 3}), small_opts(100, 30, 30)),
                    InsufficientThreads);
  }
}

TEST_CASE("synth_ssp") {
  const auto papers = fixtures::paper_corpus({.papers = 120});
  const auto ds = synth_ssp(papers, small_opts(200, 60, 60));
  check_balanced(ds);
  CHECK_NOTHROW(check_disjoint(ds));
  const auto docs = by_id(papers);
  for (const auto& inst : ds.train) {
    REQUIRE(inst.sentences.size() == 1);
    CHECK_FALSE(is_easy_sentence(inst.sentences[0], SentenceFilter{}));
    const corpus::Section* where = nullptr;
    for (const auto& sec : docs.at(inst.source_doc_id)->sections)
      for (const auto& p : sec.paragraphs)
        for (const auto& s : p)
          if (s == inst.sentences[0]) where = &sec;
    REQUIRE(where != nullptr);
    if (inst.label == 1) {
      CHECK(where->title_raw == "Abstract");
    } else {
      CHECK(where->title_raw != "Abstract");
      CHECK(where->title_raw != "Introduction");
      CHECK(where->title_raw != "Conclusion");
    }
  }
  SUBCASE("easy sentence filter") {
    CHECK(is_easy_sentence(corpus::make_sentence("x = y + z"), SentenceFilter{}));
    CHECK(is_easy_sentence(corpus::make_sentence("Too short here."), SentenceFilter{}));
    CHECK_FALSE(is_easy_sentence(corpus::make_sentence("We study a new method for parsing text."), SentenceFilter{}));
  }
  SUBCASE("missing abstract") {
    auto bad = papers;
    bad[0].sections.erase(bad[0].sections.begin());
    try {
      synth_ssp(bad, small_opts(200, 60, 60));
      FAIL("expected NoAbstract");
    } catch (const NoAbstract& e) {
      CHECK(e.doc_id() == bad[0].id);
    }
  }
}

TEST_CASE("split_by_document") {
  auto inst = [](const std::string& doc) {
    TaskInstance i;
    i.kind = TaskKind::kSectionPrediction;
    i.source_doc_id = doc;
    i.instance_id = make_instance_id("ssp", doc, 0);
    i.sentences = letters("A");
    return i;
  };
  const std::map<std::string, Split> assign{{"A", Split::kTrain}, {"B", Split::kTest}};
  const auto labels = binary_labels("ssp", "other", "abstract");
  const auto ds = split_by_document("ssp", TaskKind::kSectionPrediction, labels, {inst("A"), inst("B")}, assign);
  CHECK(ds.train.size() == 1);
  CHECK(ds.train[0].source_doc_id == "A");
  CHECK(ds.test.size() == 1);
  CHECK(ds.dev.empty());
  try {
    split_by_document("ssp", TaskKind::kSectionPrediction, labels, {inst("A"), inst("C")}, assign);
    FAIL("expected UnassignedDocument");
  } catch (const UnassignedDocument& e) {
    CHECK(e.doc_id() == "C");
  }
  Dataset overlap = ds;
  overlap.dev.push_back(inst("A"));
  CHECK_THROWS(check_disjoint(overlap));
}

TEST_CASE("dataset serialization") {
  TaskInstance sp;
  sp.kind = TaskKind::kSentencePosition;
  sp.label = 3;
  sp.sentences = letters("DABCE");
  CHECK(format_row(sp) == "3\tD\tA\tB\tC\tE");
  CHECK(parse_row("3\tD\tA\tB\tC\tE", TaskKind::kSentencePosition, 1).sentences == sp.sentences);
  try {
    parse_row("3\tD\tA\tB\tC", TaskKind::kSentencePosition, 7);
    FAIL("expected MalformedRow");
  } catch (const MalformedRow& e) {
    CHECK(e.line() == 7);
  }
  CHECK_THROWS_AS(parse_row("x\tA\tB", TaskKind::kBinaryOrdering, 1), MalformedRow);

  const fs::path dir = fs::temp_directory_path() / "disco_unit_datasets";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto ds = synth_dc_docs(wiki(), small_opts(50, 20, 20));
  write_dataset(ds, dir);
  CHECK(fs::exists(dir / "dc.train.tsv"));
  CHECK(fs::exists(dir / "dc.labels.txt"));
  CHECK(read_dataset(dir, "dc") == ds);
  CHECK(list_datasets(dir) == std::vector<std::string>{"dc"});
}

TEST_CASE("pdtb adapter") {
  CHECK(pdtb_split(2) == Split::kTrain);
  CHECK(pdtb_split(3) == Split::kTrain);
  CHECK(pdtb_split(14) == Split::kTrain);
  CHECK(pdtb_split(15) == Split::kDev);
  CHECK(pdtb_split(16) == Split::kDev);
  CHECK(pdtb_split(18) == Split::kDev);
  CHECK(pdtb_split(19) == Split::kTest);
  CHECK(pdtb_split(21) == Split::kTest);
  CHECK(pdtb_split(23) == Split::kTest);
  CHECK_FALSE(pdtb_split(0).has_value());
  CHECK_FALSE(pdtb_split(1).has_value());
  CHECK_FALSE(pdtb_split(24).has_value());
  CHECK_THROWS_AS(pdtb_split(25), UnknownSectionNumber);
  CHECK_THROWS_AS(pdtb_split(-1), UnknownSectionNumber);

  CHECK(remove_connective("But it remains to be seen whether their ads will be any more effective.", "But") ==
        "it remains to be seen whether their ads will be any more effective.");
  CHECK(remove_connective("it rose, however, by 3%.", "however") == "it rose, , by 3%.");
  CHECK(remove_connective("Nothing to remove here.", "because") == "Nothing to remove here.");

  SUBCASE("label filter and independent label spaces") {
    std::vector<PdtbRecord> rs;
    for (int i = 0; i < 10; ++i) rs.push_back(rec(3, "explicit", "Comparison.Contrast"));
    for (int i = 0; i < 9; ++i) rs.push_back(rec(4, "explicit", "Temporal.Asynchronous"));
    for (int i = 0; i < 10; ++i) rs.push_back(rec(5, "implicit", "Temporal.Asynchronous.Precedence"));
    rs.push_back(rec(16, "explicit", "Comparison.Contrast"));
    rs.push_back(rec(21, "explicit", "Temporal.Asynchronous"));
    rs.push_back(rec(21, "implicit", "Temporal.Asynchronous"));
    rs.push_back(rec(24, "implicit", "Temporal.Asynchronous"));
    const auto out = adapt_pdtb(rs);
    CHECK(out.explicit_rel.labels.names == std::vector<std::string>{"Comparison.Contrast"});
    CHECK(out.implicit_rel.labels.names == std::vector<std::string>{"Temporal.Asynchronous"});
    CHECK(out.explicit_rel.train.size() == 10);
    CHECK(out.explicit_rel.dev.size() == 1);
    CHECK(out.explicit_rel.test.empty());
    CHECK(out.implicit_rel.train.size() == 10);
    CHECK(out.implicit_rel.test.size() == 1);
    for (const auto& i : out.explicit_rel.train) CHECK(i.sentences[1].raw == "it remains to be seen.");
    for (const auto& i : out.implicit_rel.train) CHECK(i.sentences[1].raw == "But it remains to be seen.");
  }
}

TEST_CASE("rst binarization") {
  const RstTree three = node("Joint", "NNN", {leaf(1), leaf(2), leaf(3)});
  const RstTree b = binarize_rst(three);
  REQUIRE(b.children.size() == 2);
  CHECK(b.children[0] == leaf(1));
  REQUIRE(b.children[1].children.size() == 2);
  CHECK(b.children[1].children[0] == leaf(2));
  CHECK(b.children[1].children[1] == leaf(3));
  CHECK(b.children[1].relation == "Joint");

  const RstTree two = node("Elaboration", "NS", {leaf(1), leaf(2)});
  CHECK(binarize_rst(two) == two);

  const RstTree four = node("Joint", "NNNN", {leaf(1), leaf(2), leaf(3), leaf(4)});
  const RstTree b4 = binarize_rst(four);
  CHECK(leaves(b4) == std::vector<int>{1, 2, 3, 4});
  CHECK(binarize_rst(b4) == b4);
  const RstTree* cur = &b4;
  for (int e = 1; e <= 3; ++e) {
    REQUIRE(cur->children.size() == 2);
    CHECK(cur->children[0] == leaf(e));
    cur = &cur->children[1];
  }
  CHECK(*cur == leaf(4));

  CHECK_THROWS_AS(binarize_rst(node("Joint", "N", {leaf(1)})), UnaryNode);
}

TEST_CASE("rst instances") {
  // Attribution over ((e1, e2), e3), both nuclei at the top.
  const RstTree fig = node("Attribution", "NN", {node("Elaboration", "NS", {leaf(1), leaf(2)}), leaf(3)});
  const auto spans = extract_rst_spans(fig, RstLabelMode::kNuclearityRelation);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].left == std::vector<int>{1, 2});
  CHECK(spans[0].right == std::vector<int>{3});
  CHECK(spans[0].label == "NN-Attribution");
  CHECK(spans[1].label == "NS-Elaboration");
  CHECK(extract_rst_spans(fig, RstLabelMode::kRelation)[0].label == "Attribution");

  const auto docs = fixtures::rst_documents({.documents = 10});
  for (const auto& d : docs) {
    const auto bin = binarize_rst(d.tree);
    CHECK(leaves(bin) == leaves(d.tree));
    CHECK(internal_node_count(bin) == leaves(bin).size() - 1);
    std::vector<std::string> labels;
    CHECK(extract_rst_instances(d, RstLabelMode::kNuclearityRelation, labels).size() == leaves(bin).size() - 1);
  }
  CHECK(serialize_rst(parse_rst(serialize_rst(docs))) == serialize_rst(docs));
  CHECK(canonical_relation("attribution") == "Attribution");
  CHECK(canonical_relation("nope").empty());
}
