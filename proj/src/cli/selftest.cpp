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

#include "disco/cli/selftest.hpp"

#include <cstdio>
#include <span>

#include "disco/cli/fixtures.hpp"
#include "disco/cli/pipeline.hpp"
#include "disco/common/rng.hpp"
#include "disco/corpus/contexts.hpp"
#include "disco/corpus/word_vectors.hpp"
#include "disco/eval/report.hpp"
#include "disco/synth/dataset_io.hpp"

namespace disco::cli {
namespace {

std::string fmt_error(const nn::GradCheckResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "max rel error %.3g at %s (%zu coords, %zu kinks skipped)", r.max_rel_error,
                r.worst.c_str(), r.checked, r.skipped_kinks);
  return buf;
}

std::vector<int> random_tokens(Rng& rng, long vocab, std::size_t min_len, std::size_t max_len) {
  std::vector<int> out(min_len + uniform_below(rng, max_len - min_len + 1));
  for (auto& t : out) t = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(vocab)));
  return out;
}

std::vector<train::EncodedContext> random_contexts(Rng& rng, long vocab, std::size_t n) {
  std::vector<train::EncodedContext> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& c = out[i];
    c.target = random_tokens(rng, vocab, 2, 7);
    c.prev = random_tokens(rng, vocab, 1, 7);
    c.next = random_tokens(rng, vocab, 1, 7);
    // One example without a section title and one without any title.
    c.section_title = i % 3 == 0 ? std::vector<int>{} : random_tokens(rng, vocab, 1, 3);
    c.doc_title = i == n - 1 ? std::vector<int>{} : random_tokens(rng, vocab, 1, 3);
    c.nesting_level = 1 + static_cast<int>(uniform_below(rng, 7));
    c.sent_pos = static_cast<int>(uniform_below(rng, 40));
    c.para_pos = static_cast<int>(uniform_below(rng, 80));
  }
  return out;
}

template <typename T>
void fill_uniform(std::vector<nn::TensorRef<T>> tensors, Rng& rng, double scale) {
  for (auto& t : tensors)
    for (auto& v : t.data) v = static_cast<T>(uniform_real(rng, -scale, scale));
}

CheckOutcome check_encoder_loss(const std::string& name, const std::array<bool, 4>& enabled, std::uint64_t seed,
                                double tolerance) {
  nn::EncoderDims d;
  d.vocab = 60;
  d.word_dim = 32;
  d.hidden_dim = 32;
  nn::EncoderParams<double> p(d);
  Rng rng = derive_rng(seed, "selftest-encoder:" + name);
  fill_uniform(p.tensors(), rng, 0.3);
  const auto ctxs = random_contexts(rng, d.vocab, 5);

  train::LossConfig cfg;
  cfg.enabled = enabled;
  cfg.weights = {1.0, 0.7, 1.3, 0.9};
  auto loss = [&] { return train::multitask_loss<double>(ctxs, p, cfg, nullptr).total; };
  auto grad = nn::zeros_like(p);
  train::multitask_loss<double>(ctxs, p, cfg, &grad);

  nn::GradCheckOptions opt;
  opt.seed = seed;
  const auto r = nn::grad_check(loss, p.tensors(), grad.tensors(), opt);
  return {"grad " + name, r.max_rel_error < tolerance && r.checked > 0, fmt_error(r)};
}

CheckOutcome check_probe(long hidden, std::uint64_t seed, double tolerance) {
  const long in = 24, classes = 4, n = 16;
  eval::ProbeParams<double> p(in, hidden, classes);
  Rng rng = derive_rng(seed, "selftest-probe", static_cast<std::uint64_t>(hidden));
  fill_uniform(p.tensors(), rng, 0.5);
  nn::Batch<double> x(in, n);
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) = standard_normal(rng);
  std::vector<int> y(static_cast<std::size_t>(n));
  for (auto& v : y) v = static_cast<int>(uniform_below(rng, classes));

  const double l2 = 1e-2;
  auto loss = [&] { return static_cast<double>(eval::probe_loss(p, x, y, l2)); };
  eval::ProbeParams<double> grad(in, hidden, classes);
  eval::probe_loss(p, x, y, l2, &grad);
  nn::GradCheckOptions opt;
  opt.seed = seed;
  opt.coords_per_tensor = 64;
  const auto r = nn::grad_check(loss, p.tensors(), grad.tensors(), opt);
  return {hidden > 0 ? "grad probe-hidden" : "grad probe-linear", r.max_rel_error < tolerance && r.checked > 0,
          fmt_error(r)};
}

}  // namespace

std::vector<CheckOutcome> gradient_checks(std::uint64_t seed, double tolerance) {
  std::vector<CheckOutcome> out;
  out.push_back(check_encoder_loss("nsp", {true, false, false, false}, seed, tolerance));
  out.push_back(check_encoder_loss("nl", {false, true, false, false}, seed, tolerance));
  out.push_back(check_encoder_loss("spp", {false, false, true, false}, seed, tolerance));
  out.push_back(check_encoder_loss("sdt", {false, false, false, true}, seed, tolerance));
  out.push_back(check_encoder_loss("all-losses", {true, true, true, true}, seed, tolerance));
  out.push_back(check_probe(0, seed, tolerance));
  out.push_back(check_probe(16, seed, tolerance));
  return out;
}

std::vector<CheckOutcome> determinism_checks(std::uint64_t seed) {
  fixtures::WikiOptions wo;
  wo.documents = 24;
  wo.min_sentences = 20;
  wo.max_sentences = 30;
  wo.seed = seed;
  const auto docs = fixtures::wiki_corpus(wo);

  synth::SynthOptions so;
  so.seed = seed;
  so.counts = {60, 20, 20};
  so.windows = {synth::Region::kDocument, true};

  std::vector<CheckOutcome> out;
  const auto sp_a = synth::synth_sp(docs, so);
  const auto sp_b = synth::synth_sp(docs, so);
  out.push_back({"determinism synth", synth::render_dataset(sp_a) == synth::render_dataset(sp_b),
                 std::to_string(sp_a.train.size() + sp_a.dev.size() + sp_a.test.size()) + " instances"});

  const auto vocab = corpus::build_vocab(docs, 1);
  const auto vectors = corpus::random_word_vectors(vocab, 8, seed);
  const auto ctxs = train::encode_contexts(corpus::context_windows(docs), vocab);
  train::LossConfig lc;
  lc.enabled = {true, true, true, true};
  lc.batch_size = 32;
  lc.seed = seed;
  auto train_once = [&](train::TrainLog& log) {
    nn::Checkpoint ck;
    ck.params = train::make_encoder(vectors.table, 8, lc);
    ck.vocab = vocab;
    ck.seed = seed;
    log = train::train_epoch(ctxs, lc, ck.params);
    return ck;
  };
  train::TrainLog log_a, log_b;
  auto ck_a = train_once(log_a);
  auto ck_b = train_once(log_b);
  out.push_back({"determinism train",
                 nn::serialize_checkpoint(ck_a) == nn::serialize_checkpoint(ck_b) && log_a.to_jsonl() == log_b.to_jsonl(),
                 std::to_string(log_a.steps) + " steps"});

  RunConfig cfg;
  cfg.seed = seed;
  auto probe_once = [&](nn::Checkpoint ck) {
    eval::EncoderSource src(std::move(ck));
    return evaluate_dataset(sp_a, src, cfg);
  };
  const auto r_a = probe_once(ck_a);
  const auto r_b = probe_once(ck_b);
  out.push_back({"determinism eval", eval::results_jsonl({r_a}) == eval::results_jsonl({r_b}),
                 "test accuracy " + std::to_string(r_a.test_accuracy)});
  return out;
}

bool run_selftest(std::uint64_t seed, std::ostream& out) {
  bool ok = true;
  auto report = [&](const std::vector<CheckOutcome>& checks) {
    for (const auto& c : checks) {
      out << (c.ok ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
      ok = ok && c.ok;
    }
  };
  report(gradient_checks(seed));
  report(determinism_checks(seed));
  out << (ok ? "selftest passed" : "selftest FAILED") << "\n";
  return ok;
}

}  // namespace disco::cli
