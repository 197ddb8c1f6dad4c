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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails. Takes the scratch directory as its
// only argument.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "disco/cli/config.hpp"
#include "disco/cli/fixtures.hpp"
#include "disco/cli/pipeline.hpp"
#include "disco/cli/selftest.hpp"
#include "disco/common/io.hpp"
#include "disco/corpus/corpus_io.hpp"
#include "disco/corpus/word_vectors.hpp"
#include "disco/eval/features.hpp"
#include "disco/eval/report.hpp"
#include "disco/synth/dataset_io.hpp"
#include "disco/synth/pdtb.hpp"
#include "disco/synth/rst.hpp"
#include "disco/train/trainer.hpp"

using namespace disco;
namespace fs = std::filesystem;

namespace {

fs::path g_work;

struct Outcome {
  bool ok = true;
  std::string detail;

  // Records a check; failed checks are listed in the detail.
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = g_work / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Runs the command-line front end in-process; stdout and stderr are kept.
int invoke(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "disco");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text) *err_text = err.str();
  return code;
}

// Pearson statistic against a uniform distribution over `counts`.
double chi_square_uniform(const std::vector<std::size_t>& counts) {
  double n = 0;
  for (auto c : counts) n += static_cast<double>(c);
  const double expected = n / static_cast<double>(counts.size());
  double chi = 0;
  for (auto c : counts) chi += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return chi;
}

// Upper 1% points of the chi-square distribution.
double chi_square_critical_01(std::size_t df) {
  static const std::map<std::size_t, double> table{{1, 6.635}, {2, 9.210}, {3, 11.345}, {4, 13.277}, {5, 15.086}};
  return table.at(df);
}

bool splits_disjoint(const synth::Dataset& ds) {
  const auto tr = ds.doc_ids(synth::Split::kTrain), dv = ds.doc_ids(synth::Split::kDev),
             te = ds.doc_ids(synth::Split::kTest);
  for (const auto& d : tr)
    if (dv.count(d) || te.count(d)) return false;
  for (const auto& d : dv)
    if (te.count(d)) return false;
  return true;
}

// ---------------------------------------------------------------- 1
Outcome gradient_correctness() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : cli::gradient_checks(13, 1e-3)) o.require(c.ok, c.name + " (" + c.detail + ")");
  const double s = seconds_since(t0);
  o.require(s < 60.0, "runtime under 60 s");
  o.note("7 checks in " + fmt("%.1f s", s));
  return o;
}

// ---------------------------------------------------------------- 2
Outcome initialization_exactness() {
  Outcome o;
  const auto docs = fixtures::wiki_corpus({});
  const auto vocab = corpus::build_vocab(docs, 1);
  const auto ctxs = train::encode_contexts(corpus::context_windows(docs), vocab);
  train::LossConfig cfg;
  auto p = train::make_encoder(corpus::random_word_vectors(vocab, 32, 13).table, 32, cfg);
  for (auto& h : p.heads) {
    h.output.w.setZero();
    h.output.b.setZero();
  }
  const double V = static_cast<double>(vocab.size());
  double worst_nl = 0, worst_spp = 0, worst_nsp = 0, worst_sdt = 0;
  int sdt_checked = 0;
  for (std::size_t i = 0; i < ctxs.size(); i += 97) {
    const auto& c = ctxs[i];
    worst_nl = std::max(worst_nl, std::abs(train::single_loss<float>(train::Loss::kNl, c, p, cfg) - std::log(7.0)));
    worst_spp = std::max(worst_spp, std::abs(train::single_loss<float>(train::Loss::kSpp, c, p, cfg) -
                                             (std::log(32.0) + std::log(64.0))));
    worst_nsp = std::max(worst_nsp, std::abs(train::single_loss<float>(train::Loss::kNsp, c, p, cfg) - 2 * std::log(V)));
    if (!c.section_title.empty() && !c.doc_title.empty()) {
      worst_sdt =
          std::max(worst_sdt, std::abs(train::single_loss<float>(train::Loss::kSdt, c, p, cfg) - 2 * std::log(V)));
      ++sdt_checked;
    }
  }
  o.require(worst_nl <= 1e-5, "NL = ln 7 within 1e-5");
  o.require(worst_spp <= 1e-5, "SPP = ln 32 + ln 64 within 1e-5");
  o.require(worst_nsp <= 1e-4, "NSP = 2 ln V within 1e-4");
  o.require(sdt_checked > 0 && worst_sdt <= 1e-4, "SDT = 2 ln V within 1e-4");
  o.note("V=" + std::to_string(vocab.size()) + ", max deviations nl " + fmt("%.1e", worst_nl) + " spp " +
         fmt("%.1e", worst_spp) + " nsp " + fmt("%.1e", worst_nsp) + " sdt " + fmt("%.1e", worst_sdt));
  return o;
}

// ---------------------------------------------------------------- 3
Outcome report_arithmetic() {
  Outcome o;
  auto avg_cell = [](std::initializer_list<double> pct) {
    std::vector<eval::EvalResult> rs;
    std::size_t i = 0;
    for (double p : pct) rs.push_back({std::string(eval::kReportTasks[i++]), 0.0, p / 100.0});
    const auto rep = eval::make_report(rs);
    const auto row = rep.csv.substr(rep.csv.find('\n') + 1);
    return row.substr(row.rfind(',') + 1, row.size() - row.rfind(',') - 2);
  };
  const auto a = avg_cell({47.3, 63.8, 61.0, 77.8, 36.5, 39.1, 56.7});
  const auto b = avg_cell({53.8, 69.3, 59.6, 80.4, 44.3, 43.6, 59.1});
  o.require(a == "54.6", "first row avg 54.6 (got " + a + ")");
  o.require(b == "58.6", "second row avg 58.6 (got " + b + ")");
  o.note("avg " + a + " and " + b);
  return o;
}

// ---------------------------------------------------------------- 4
Outcome synthesis_contracts() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto dir = fresh_dir("synthesis");
  const auto wiki = (dir / "wiki.jsonl").string(), papers = (dir / "papers.jsonl").string();
  const auto out = (dir / "data").string();
  o.require(invoke({"fixture", "--kind", "wiki", "--count", "1000", "--output", wiki}) == 0, "wiki fixture");
  o.require(invoke({"fixture", "--kind", "papers", "--count", "2000", "--output", papers}) == 0, "papers fixture");
  const std::vector<std::string> common{"--counts", "10000,4000,4000", "--seed", "13", "--out-dir", out};
  for (const std::string task : {"sp", "bso", "dc"}) {
    auto args = std::vector<std::string>{"synth", "--task", task, "--input", wiki, "--region", "document",
                                         "--all-windows"};
    args.insert(args.end(), common.begin(), common.end());
    std::string err;
    o.require(invoke(args, &err) == 0, "synth " + task);
  }
  {
    auto args = std::vector<std::string>{"synth", "--task", "ssp", "--input", papers};
    args.insert(args.end(), common.begin(), common.end());
    o.require(invoke(args) == 0, "synth ssp");
  }
  if (!o.ok) return o;

  for (const std::string name : {"sp", "bso", "dc", "ssp"}) {
    const auto ds = synth::read_dataset(out, name);
    o.require(ds.train.size() == 10000 && ds.dev.size() == 4000 && ds.test.size() == 4000, name + " sizes");
    o.require(splits_disjoint(ds), name + " document-disjoint splits");
    if (name != "sp") {
      for (auto s : synth::kSplits) {
        long pos = 0, neg = 0;
        for (const auto& i : ds.split(s)) (i.label ? pos : neg)++;
        o.require(std::abs(pos - neg) <= 1, name + " " + std::string(synth::split_name(s)) + " balanced");
      }
    }
    if (name == "sp") {
      std::vector<std::size_t> counts(5, 0);
      for (const auto& i : ds.train) counts.at(static_cast<std::size_t>(i.label))++;
      const double chi = chi_square_uniform(counts);
      o.require(chi < chi_square_critical_01(4), "SP labels uniform");
      o.note("SP chi2 " + fmt("%.2f", chi) + " (df 4)");
    }
    if (name == "dc") {
      std::vector<std::size_t> counts(4, 0);
      for (const auto& i : ds.train)
        if (i.label == 0) counts.at(static_cast<std::size_t>(i.replaced_slot - 2))++;
      const double chi = chi_square_uniform(counts);
      o.require(chi < chi_square_critical_01(3), "DC replacement slots uniform");
      o.note("DC slot chi2 " + fmt("%.2f", chi) + " (df 3)");
    }
  }
  const double s = seconds_since(t0);
  o.require(s < 120.0, "runtime under 2 min");
  o.note("10000/4000/4000 for sp, bso, dc, ssp in " + fmt("%.1f s", s));
  return o;
}

// ---------------------------------------------------------------- 5
Outcome pdtb_adapter() {
  Outcome o;
  using synth::PdtbRecord;
  const std::string arg2 = "But it remains to be seen whether their ads will be any more effective.";
  std::vector<PdtbRecord> recs;
  int serial = 0;
  auto add = [&](int section, const std::string& type, const std::string& label) {
    char id[32];
    std::snprintf(id, sizeof id, "wsj_%02d%02d", section, serial++ % 100);
    recs.push_back({section, type, "Their ads are clever.", arg2, type == "explicit" ? "But" : "", label, id});
  };
  for (int s = 2; s <= 14; ++s) add(s, "explicit", "Comparison.Contrast");
  for (int s = 15; s <= 18; ++s) add(s, "explicit", "Comparison.Contrast");
  for (int s = 19; s <= 23; ++s) add(s, "explicit", "Comparison.Contrast");
  for (int s = 2; s <= 10; ++s) add(s, "explicit", "Temporal.Asynchronous");  // 9 training instances
  add(16, "explicit", "Temporal.Asynchronous");
  add(17, "explicit", "Temporal.Asynchronous");
  add(20, "explicit", "Temporal.Asynchronous");
  add(22, "explicit", "Temporal.Asynchronous");
  for (int s = 2; s <= 14; ++s) add(s, "implicit", "Contingency.Cause.Reason");
  for (int s = 15; s <= 18; ++s) add(s, "implicit", "Contingency.Cause");
  for (int s = 19; s <= 23; ++s) add(s, "implicit", "Contingency.Cause");
  add(1, "explicit", "Comparison.Contrast");
  add(24, "implicit", "Contingency.Cause");
  add(1, "implicit", "Contingency.Cause");
  o.require(recs.size() == 60, "fixture has 60 records");
  std::set<int> sections;
  for (const auto& r : recs) sections.insert(r.section);
  o.require(sections.size() == 24, "fixture spans sections 1-24");

  const auto out = synth::adapt_pdtb(synth::parse_pdtb(synth::serialize_pdtb(recs)));
  auto section_of = [](const synth::TaskInstance& i) { return std::stoi(i.source_doc_id.substr(4, 2)); };
  auto routed = [&](const synth::Dataset& ds) {
    for (const auto& i : ds.train)
      if (section_of(i) < 2 || section_of(i) > 14) return false;
    for (const auto& i : ds.dev)
      if (section_of(i) < 15 || section_of(i) > 18) return false;
    for (const auto& i : ds.test)
      if (section_of(i) < 19 || section_of(i) > 23) return false;
    return true;
  };
  const auto& e = out.explicit_rel;
  const auto& im = out.implicit_rel;
  o.require(routed(e) && routed(im), "records routed 2-14 / 15-18 / 19-23");
  o.require(e.train.size() == 13 && e.dev.size() == 4 && e.test.size() == 5, "explicit split sizes 13/4/5");
  o.require(im.train.size() == 13 && im.dev.size() == 4 && im.test.size() == 5, "implicit split sizes 13/4/5");
  o.require(e.labels.names == std::vector<std::string>{"Comparison.Contrast"}, "9-instance label removed");
  o.require(im.labels.names == std::vector<std::string>{"Contingency.Cause"}, "implicit labels truncated to 2 levels");
  bool stripped = true, kept = true;
  for (auto s : synth::kSplits) {
    for (const auto& i : e.split(s))
      stripped = stripped && i.sentences[1].raw == "it remains to be seen whether their ads will be any more effective.";
    for (const auto& i : im.split(s)) kept = kept && i.sentences[1].raw == arg2;
  }
  o.require(stripped, "explicit connective removed from the second argument");
  o.require(kept, "implicit arguments unchanged");
  o.note("explicit 13/4/5, implicit 13/4/5, 3 out-of-range records dropped");
  return o;
}

// ---------------------------------------------------------------- 6
Outcome rst_adapter() {
  Outcome o;
  using synth::RstTree;
  auto leaf = [](int e) { return RstTree{e, "", "", {}}; };
  const RstTree four{0, "Joint", "NNNN", {leaf(1), leaf(2), leaf(3), leaf(4)}};
  const RstTree b = synth::binarize_rst(four);
  bool right_branching = true;
  const RstTree* cur = &b;
  for (int e = 1; e <= 3; ++e) {
    right_branching = right_branching && cur->children.size() == 2 && cur->children[0] == leaf(e);
    if (!right_branching) break;
    cur = &cur->children[1];
  }
  right_branching = right_branching && *cur == leaf(4);
  o.require(right_branching, "4-child node binarizes right-branching");
  o.require(synth::leaves(b) == std::vector<int>{1, 2, 3, 4}, "leaf order preserved");

  synth::RstDocument doc;
  doc.doc_id = "fig1";
  doc.split = "train";
  doc.edus = {"It could have been worse,", "since the market was closed,", "analysts said."};
  doc.tree = RstTree{0, "Attribution", "NN", {RstTree{0, "Elaboration", "NS", {leaf(1), leaf(2)}}, leaf(3)}};
  std::vector<std::string> labels;
  const auto inst = synth::extract_rst_instances(doc, synth::RstLabelMode::kNuclearityRelation, labels);
  o.require(!inst.empty() && labels[0] == "NN-Attribution", "top node labelled NN-Attribution");
  if (inst.empty()) return o;

  eval::EmbeddingCache cache(3);
  const std::vector<eval::Vector<float>> x = {eval::Vector<float>::Constant(3, 1.0f),
                                              (eval::Vector<float>(3) << 3, -1, 0.5f).finished(),
                                              (eval::Vector<float>(3) << -2, 4, 8).finished()};
  for (std::size_t s = 0; s < 3; ++s) cache.put(inst[0].instance_id, s, x[s]);
  const auto bundle = eval::embed_instances({inst[0]}, cache);
  o.require(bundle[0].size() == 2, "two sides");
  o.require(bundle[0][0].isApprox((x[0] + x[1]) / 2.0f), "left side is the mean of EDUs 1 and 2");
  o.require(bundle[0][1] == x[2], "right side is EDU 3");
  o.note("left {1,2}, right {3}, label " + labels[0]);
  return o;
}

// ---------------------------------------------------------------- 7
Outcome training_sanity() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto dir = fresh_dir("training");
  const auto corpus = (dir / "wiki.jsonl").string(), vectors = (dir / "vectors.txt").string();
  o.require(invoke({"fixture", "--kind", "wiki", "--output", corpus}) == 0, "fixture corpus");
  o.require(invoke({"fixture", "--kind", "vectors", "--corpus", corpus, "--output", vectors}) == 0, "fixture vectors");
  if (!o.ok) return o;

  auto cfg = cli::resolve_config("", {{"corpus_path", corpus}, {"vectors_path", vectors}}, std::nullopt);
  const auto nsp = cli::train_encoder(cfg);
  const double r = nsp.log.window_mean("nsp", 100, true) / nsp.log.window_mean("nsp", 100, false);
  o.require(r <= 0.8, "NSP-only last/first 100-step mean <= 0.8");
  o.note("NSP-only ratio " + fmt("%.3f", r) + " over " + std::to_string(nsp.log.steps) + " steps");

  cfg.losses = {"nsp", "nl", "spp", "sdt"};
  const auto all = cli::train_encoder(cfg);
  std::string ratios;
  for (const char* h : {"nsp", "nl", "spp", "sdt"}) {
    const double q = all.log.window_mean(h, 100, true) / all.log.window_mean(h, 100, false);
    o.require(q <= 0.8, std::string(h) + " reduced by at least 20%");
    ratios += std::string(ratios.empty() ? "" : " ") + h + " " + fmt("%.3f", q);
  }
  o.note("all losses: " + ratios);
  const double s = seconds_since(t0);
  o.require(s < 300.0, "runtime under 5 min");
  o.note(fmt("%.0f s", s));
  return o;
}

// ---------------------------------------------------------------- 8
struct Points {
  nn::Batch<float> x;
  std::vector<int> y;
};

Points blobs(std::size_t n, Rng& rng) {
  Points p{nn::Batch<float>(6, static_cast<Eigen::Index>(n)), std::vector<int>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    p.y[j] = static_cast<int>(uniform_below(rng, 2));
    for (Eigen::Index i = 0; i < 6; ++i)
      p.x(i, static_cast<Eigen::Index>(j)) = static_cast<float>((p.y[j] ? 1.5 : -1.5) + standard_normal(rng));
  }
  return p;
}

Points quadrant_parity(std::size_t n, Rng& rng) {
  Points p{nn::Batch<float>(2, static_cast<Eigen::Index>(n)), std::vector<int>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = uniform_real(rng, 0.0, 2.0 * std::numbers::pi);
    const double r = std::exp(uniform_real(rng, -3.0, 3.0));
    const auto c = static_cast<Eigen::Index>(j);
    p.x(0, c) = static_cast<float>(r * std::cos(theta));
    p.x(1, c) = static_cast<float>(r * std::sin(theta));
    p.y[j] = (p.x(0, c) > 0) != (p.x(1, c) > 0);
  }
  return p;
}

Outcome probe_sanity() {
  Outcome o;
  Rng rng = derive_rng(13, "acceptance-probe");
  eval::ProbeSpec spec;
  spec.task = "synthetic";

  const auto tr = blobs(4000, rng), dv = blobs(1000, rng), te = blobs(2000, rng);
  const double sep = eval::evaluate_probe(eval::train_probe(tr.x, tr.y, dv.x, dv.y, spec), te.x, te.y, spec).test_accuracy;
  o.require(sep >= 0.99, "separable >= 0.99");

  std::string shuffled;
  for (int K : {2, 5}) {
    spec.classes = K;
    auto labels = [&](std::size_t n) {
      std::vector<int> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(i % static_cast<std::size_t>(K));
      shuffle(std::span<int>(y), rng);
      return y;
    };
    const auto ytr = labels(tr.y.size()), ydv = labels(dv.y.size()), yte = labels(te.y.size());
    const double acc = eval::evaluate_probe(eval::train_probe(tr.x, ytr, dv.x, ydv, spec), te.x, yte, spec).test_accuracy;
    const double sigma = std::sqrt(K - 1.0) / (K * std::sqrt(static_cast<double>(yte.size())));
    o.require(std::abs(acc - 1.0 / K) <= 3 * sigma, "shuffled K=" + std::to_string(K) + " within 3 sigma of chance");
    shuffled += " K=" + std::to_string(K) + " " + fmt("%.3f", acc);
  }
  spec.classes = 2;

  const auto xtr = quadrant_parity(40000, rng), xdv = quadrant_parity(500, rng), xte = quadrant_parity(1000, rng);
  const double lin =
      eval::evaluate_probe(eval::train_probe(xtr.x, xtr.y, xdv.x, xdv.y, spec), xte.x, xte.y, spec).test_accuracy;
  spec.hidden_width = 32;
  const double hid =
      eval::evaluate_probe(eval::train_probe(xtr.x, xtr.y, xdv.x, xdv.y, spec), xte.x, xte.y, spec).test_accuracy;
  o.require(lin <= 0.6, "quadrant parity linear <= 0.6");
  o.require(hid >= 0.9, "quadrant parity hidden >= 0.9");
  o.note("separable " + fmt("%.3f", sep) + "; shuffled" + shuffled + "; parity linear " + fmt("%.3f", lin) +
         " hidden " + fmt("%.3f", hid));
  return o;
}

// ---------------------------------------------------------------- 9
// Every sentence carries a counter token; a document counts up from a random
// offset, so a sentence's own value says little about its place in the
// window while differences to its neighbours pin it down.
class CounterSource : public eval::EmbeddingSource {
 public:
  explicit CounterSource(std::uint64_t seed) : rng_(derive_rng(seed, "counter-noise")) {}
  long dim() const override { return 3; }
  eval::Bundle slots(const synth::TaskInstance& inst) override {
    eval::Bundle out;
    for (const auto& s : inst.sentences) {
      const double v = std::stod(s.tokens.at(1));
      eval::Vector<float> e(3);
      e << static_cast<float>(v / 2.0), static_cast<float>(0.1 * standard_normal(rng_)),
          static_cast<float>(0.1 * standard_normal(rng_));
      out.push_back(e);
    }
    return out;
  }

 private:
  Rng rng_;
};

Outcome context_ablation() {
  Outcome o;
  Rng rng = derive_rng(13, "counter-corpus");
  std::string jsonl;
  const std::size_t docs = 18000;
  for (std::size_t d = 0; d < docs; ++d) {
    const auto offset = uniform_below(rng, 5);
    nlohmann::json para = nlohmann::json::array();
    for (std::size_t k = 0; k < 6; ++k) para.push_back("count " + std::to_string(offset + k) + " here .");
    nlohmann::json doc{{"id", "c" + std::to_string(d)},
                       {"title", "Counter " + std::to_string(d)},
                       {"categories", nlohmann::json::array({"counting"})},
                       {"sections", {{{"title", "Body"}, {"level", 1}, {"paragraphs", {para}}}}}};
    jsonl += doc.dump() + "\n";
  }
  synth::SynthOptions so;
  so.counts = {10000, 4000, 4000};
  const auto ds = synth::synth_sp(corpus::parse_corpus(jsonl), so);

  cli::RunConfig cfg;
  CounterSource with_context(13), without_context(13);
  const double sp5 = cli::evaluate_dataset(ds, with_context, cfg, eval::Construction::kSp5).test_accuracy;
  const double sp1 = cli::evaluate_dataset(ds, without_context, cfg, eval::Construction::kSp1).test_accuracy;
  o.require(sp5 - sp1 >= 0.10, "sp5 beats sp1 by at least 10 points");
  o.require(sp1 > 0.20, "sp1 above the 20% random baseline");
  o.note("sp5 " + fmt("%.1f", 100 * sp5) + ", sp1 " + fmt("%.1f", 100 * sp1) + ", random 20.0");
  return o;
}

// ---------------------------------------------------------------- 10
std::map<std::string, std::string> tree_contents(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  return out;
}

bool pipeline_run(const fs::path& dir) {
  const auto corpus = (dir / "wiki.jsonl").string(), vectors = (dir / "vectors.txt").string();
  const auto data = (dir / "data").string(), out = dir.string();
  auto run = [&](std::vector<std::string> args, const std::string& out_dir) {
    for (const std::string& a : {"--seed", "13", "--corpus", corpus.c_str(), "--vectors", vectors.c_str(), "--out-dir"})
      args.push_back(a);
    args.push_back(out_dir);
    return invoke(args) == 0;
  };
  bool ok = invoke({"fixture", "--kind", "wiki", "--count", "80", "--output", corpus}) == 0;
  ok = ok && invoke({"fixture", "--kind", "vectors", "--corpus", corpus, "--output", vectors, "--dim", "16"}) == 0;
  for (const std::string task : {"sp", "bso", "dc"})
    ok = ok && run({"synth", "--task", task, "--counts", "400,100,100", "--region", "document", "--all-windows"}, data);
  ok = ok && run({"train", "--losses", "nsp,nl,spp,sdt", "--hidden-dim", "16", "--word-dim", "16"}, out);
  ok = ok && run({"eval", "--task", "sp,bso,dc", "--data-dir", data}, out);
  ok = ok && run({"report", "--task", "sp,bso,dc"}, out);
  return ok;
}

Outcome end_to_end_determinism() {
  Outcome o;
  const auto a = fresh_dir("pipeline_a"), b = fresh_dir("pipeline_b");
  o.require(pipeline_run(a), "first pipeline run");
  o.require(pipeline_run(b), "second pipeline run");
  if (!o.ok) return o;
  const auto ca = tree_contents(a), cb = tree_contents(b);
  for (const char* f : {"data/sp.train.tsv", "data/dc.test.tsv", "encoder.ckpt", "train_log.jsonl",
                        "eval_results.jsonl", "report.csv", "report.txt"})
    o.require(ca.count(f) == 1, std::string("output ") + f);
  std::vector<std::string> differing;
  for (const auto& [name, bytes] : ca) {
    auto it = cb.find(name);
    if (it == cb.end() || it->second != bytes) differing.push_back(name);
  }
  o.require(ca.size() == cb.size(), "same file set");
  o.require(differing.empty(), "byte-identical outputs" + (differing.empty() ? "" : " (" + differing[0] + ")"));
  o.note(std::to_string(ca.size()) + " files compared");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  g_work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "disco_acceptance";
  fs::create_directories(g_work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gradient correctness", gradient_correctness},
      {"initialization exactness", initialization_exactness},
      {"report arithmetic", report_arithmetic},
      {"synthesis contracts", synthesis_contracts},
      {"discourse relation adapter", pdtb_adapter},
      {"discourse tree adapter", rst_adapter},
      {"training sanity", training_sanity},
      {"probe sanity", probe_sanity},
      {"context ablation", context_ablation},
      {"end-to-end determinism", end_to_end_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " ["
              << fmt("%.1fs", seconds_since(t0)) << "]: " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
