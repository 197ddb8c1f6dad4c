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

#include <cmath>
#include <filesystem>

#include "disco/nn/adam.hpp"
#include "disco/nn/checkpoint.hpp"
#include "disco/nn/encoder.hpp"
#include "disco/nn/feedforward.hpp"
#include "disco/nn/grad_check.hpp"
#include "disco/nn/gru.hpp"
#include "disco/nn/losses.hpp"

using namespace disco;
using namespace disco::nn;

namespace {

// Scalar-loop reference for one GRU step.
std::vector<double> gru_reference(const std::vector<double>& x, const std::vector<double>& h, const GruParams<double>& p) {
  const auto H = static_cast<std::size_t>(p.hidden_dim());
  const auto D = static_cast<std::size_t>(p.input_dim());
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  std::vector<double> z(H), r(H), out(H);
  for (std::size_t i = 0; i < H; ++i) {
    double az = p.b_z(i), ar = p.b_r(i);
    for (std::size_t j = 0; j < D; ++j) {
      az += p.w_z(i, j) * x[j];
      ar += p.w_r(i, j) * x[j];
    }
    for (std::size_t j = 0; j < H; ++j) {
      az += p.u_z(i, j) * h[j];
      ar += p.u_r(i, j) * h[j];
    }
    z[i] = sig(az);
    r[i] = sig(ar);
  }
  for (std::size_t i = 0; i < H; ++i) {
    double a = p.b_h(i);
    for (std::size_t j = 0; j < D; ++j) a += p.w_h(i, j) * x[j];
    for (std::size_t j = 0; j < H; ++j) a += p.u_h(i, j) * r[j] * h[j];
    out[i] = (1 - z[i]) * h[i] + z[i] * std::tanh(a);
  }
  return out;
}

template <typename T>
void randomize(std::vector<TensorRef<T>> tensors, Rng& rng, double scale) {
  for (auto& t : tensors)
    for (auto& v : t.data) v = static_cast<T>(uniform_real(rng, -scale, scale));
}

EncoderDims toy_dims() {
  EncoderDims d;
  d.vocab = 20;
  d.word_dim = 3;
  d.hidden_dim = 4;
  d.head_hidden = 5;
  d.nl_classes = 7;
  d.sp_classes = 4;
  d.pp_classes = 6;
  return d;
}

}  // namespace

TEST_CASE("gru_cell with zero parameters halves the state") {
  GruParams<double> p(3, 2);
  Vector<double> h(2);
  h << 0.4, -0.2;
  const Vector<double> out = gru_cell(Vector<double>(Vector<double>::Ones(3)), h, p);
  CHECK(out(0) == doctest::Approx(0.2));
  CHECK(out(1) == doctest::Approx(-0.1));
  CHECK(gru_cell(Vector<double>(Vector<double>::Ones(3)), Vector<double>(Vector<double>::Zero(2)), p).isZero());
}

TEST_CASE("gru_cell matches a scalar reference and stays inside (-1, 1)") {
  Rng rng(7);
  GruParams<double> p(3, 4);
  std::vector<TensorRef<double>> t;
  p.append_tensors("g", t);
  randomize(t, rng, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    Vector<double> x(3), h(4);
    for (auto& v : x) v = uniform_real(rng, -3, 3);
    for (auto& v : h) v = uniform_real(rng, -0.999, 0.999);
    const auto ref_out = gru_reference({x.data(), x.data() + 3}, {h.data(), h.data() + 4}, p);
    const auto out = gru_cell(x, h, p);
    for (int i = 0; i < 4; ++i) {
      CHECK(out(i) == doctest::Approx(ref_out[static_cast<std::size_t>(i)]).epsilon(1e-12));
      CHECK(std::abs(out(i)) < 1.0);
    }
  }
  CHECK_THROWS_AS(gru_cell(Vector<double>(Vector<double>::Zero(2)), Vector<double>(Vector<double>::Zero(4)), p),
                  DimMismatch);
}

TEST_CASE("bigru_encode basic properties") {
  auto d = toy_dims();
  EncoderParams<double> zero(d);
  CHECK(bigru_encode({3, 4, 5}, zero).isZero());
  CHECK(bigru_encode({3, 4, 5}, zero).size() == 8);
  CHECK_THROWS_AS(bigru_encode({}, zero), EmptySequence);
  CHECK_THROWS_AS(bigru_encode({20}, zero), IndexOutOfVocab);

  EncoderParams<double> p(d);
  Rng rng(11);
  randomize(p.tensors(), rng, 0.8);
  // Forward and backward GRUs share nothing, so make them equal to test the
  // length-one symmetry.
  EncoderParams<double> q = p;
  q.backward = q.forward;
  const Vector<double> one = bigru_encode({6}, q);
  const Vector<double> e = q.embedding.row(6).transpose();
  const Vector<double> cell = gru_cell(e, Vector<double>(Vector<double>::Zero(4)), q.forward);
  CHECK((one.head(4) - cell).norm() < 1e-14);
  CHECK((one.tail(4) - cell).norm() < 1e-14);

  // Reversing the tokens swaps the halves when both directions share weights.
  const std::vector<int> s = {2, 9, 4, 17, 5};
  const std::vector<int> rev(s.rbegin(), s.rend());
  const Vector<double> a = bigru_encode(s, q);
  const Vector<double> b = bigru_encode(rev, q);
  CHECK((a.head(4) - b.tail(4)).norm() < 1e-12);
  CHECK((a.tail(4) - b.head(4)).norm() < 1e-12);

  // Order sensitivity with independent directions.
  const std::vector<int> shuffled = {17, 2, 5, 9, 4};
  CHECK((bigru_encode(s, p) - bigru_encode(shuffled, p)).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("feedforward head outputs") {
  FeedForward<double> f(3, 4, 5);
  f.output.b << 1, 2, 3, 4, 5;
  Vector<double> x(3);
  x << 0.3, -1, 2;
  CHECK(feedforward_apply(f, x) == f.output.b);

  // Negative pre-activations everywhere: hidden layers output zero.
  Rng rng(3);
  f.init(rng);
  f.hidden1.w.setZero();
  f.hidden1.b.setConstant(-1);
  CHECK((feedforward_apply(f, x) - f.output.b).norm() == 0.0);
  CHECK_THROWS_AS(feedforward_apply(f, Vector<double>(Vector<double>::Zero(2))), DimMismatch);
}

TEST_CASE("softmax cross-entropy values") {
  CHECK(softmax_xent(Vector<double>(Vector<double>::Zero(18)), 4).loss == doctest::Approx(std::log(18.0)));
  CHECK(std::log(18.0) == doctest::Approx(2.8904).epsilon(1e-4));
  CHECK(softmax_xent(Vector<double>(Vector<double>::Zero(2)), 0).loss == doctest::Approx(0.6931).epsilon(1e-4));
  Vector<double> big(2);
  big << 1000, 0;
  const auto r = softmax_xent(big, 0);
  CHECK(std::isfinite(r.loss));
  CHECK(r.loss == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.grad.allFinite());
  CHECK_THROWS_AS(softmax_xent(big, 2), LabelOutOfRange);
  CHECK_THROWS_AS(softmax_xent(big, -1), LabelOutOfRange);

  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Vector<double> l(9);
    for (auto& v : l) v = uniform_real(rng, -50, 50);
    CHECK(softmax(l).sum() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(softmax_xent(l, i % 9).loss >= 0.0);
  }
}

TEST_CASE("bag-of-words loss values") {
  const Vector<double> uniform = Vector<double>::Zero(100);
  CHECK(bow_nll(uniform, {3, 7, 7}).loss == doctest::Approx(std::log(100.0)));
  CHECK(bow_nll(uniform, {3, 7, 7}, false).loss == doctest::Approx(3 * std::log(100.0)));
  Vector<double> peaked = Vector<double>::Zero(100);
  peaked(42) = 200;
  CHECK(bow_nll(peaked, {42}).loss < 1e-12);
  CHECK_THROWS_AS(bow_nll(uniform, {}), EmptyTarget);

  // Repeated tokens count with multiplicity.
  Rng rng(9);
  Vector<double> l(6);
  for (auto& v : l) v = uniform_real(rng, -2, 2);
  const auto lp = log_softmax(l);
  CHECK(bow_nll(l, {1, 1, 4}, false).loss == doctest::Approx(-(2 * lp(1) + lp(4))));
}

TEST_CASE("gradient checker on simple functions") {
  Vector<double> w(2);
  w << 1, -2;
  Vector<double> g(2);
  g << 2, -4;
  std::vector<TensorRef<double>> p{ref<double>("w", w)};
  std::vector<TensorRef<double>> a{ref<double>("g", g)};
  const auto r = grad_check([&] { return w.squaredNorm(); }, p, a);
  CHECK(r.checked == 2);
  CHECK(r.max_rel_error < 1e-8);

  // A wrong gradient is reported.
  g << 2, -3;
  CHECK(grad_check([&] { return w.squaredNorm(); }, p, a).max_rel_error > 0.1);

  // ReLU exactly at its kink is skipped rather than flagged.
  Vector<double> x(2);
  x << 0.0, 0.5;
  Vector<double> gx(2);
  gx << 0.0, 1.0;
  std::vector<TensorRef<double>> px{ref<double>("x", x)};
  std::vector<TensorRef<double>> ax{ref<double>("g", gx)};
  const auto k = grad_check([&] { return x.cwiseMax(0.0).sum(); }, px, ax);
  CHECK(k.skipped_kinks == 1);
  CHECK(k.checked == 1);
  CHECK(k.max_rel_error < 1e-8);

  CHECK_THROWS_AS(grad_check([&] { return std::nan(""); }, px, ax), NonFiniteLoss);
}

TEST_CASE("feedforward and encoder gradients match finite differences") {
  const auto d = toy_dims();
  EncoderParams<double> p(d);
  Rng rng(21);
  randomize(p.tensors(), rng, 0.7);
  const std::vector<int> tokens = {3, 8, 3, 12};
  const std::vector<int> bag = {5, 5, 19, 2};

  auto loss = [&] {
    const Vector<double> e = bigru_encode(tokens, p);
    const Vector<double> logits = feedforward_apply(p.head(Head::kNspNext), e);
    return bow_nll(logits, bag).loss + softmax_xent(feedforward_apply(p.head(Head::kNestingLevel), e), 3).loss;
  };
  EncoderParams<double> grad = zeros_like(p);
  EncodeCache<double> cache;
  const Vector<double> e = bigru_encode(tokens, p, &cache);
  Batch<double> eb = e;
  FeedForwardCache<double> c1, c2;
  const Batch<double> l1 = feedforward_apply(p.head(Head::kNspNext), eb, &c1);
  const Batch<double> l2 = feedforward_apply(p.head(Head::kNestingLevel), eb, &c2);
  const Batch<double> g1 = bow_nll<double>(l1.col(0), bag).grad;
  const Batch<double> g2 = softmax_xent<double>(l2.col(0), 3).grad;
  Batch<double> de = feedforward_backward(p.head(Head::kNspNext), c1, g1, grad.head(Head::kNspNext));
  de += feedforward_backward(p.head(Head::kNestingLevel), c2, g2, grad.head(Head::kNestingLevel));
  bigru_backward<double>(cache, de.col(0), p, grad);

  GradCheckOptions opt;
  opt.coords_per_tensor = 24;
  const auto r = grad_check(loss, p.tensors(), grad.tensors(), opt);
  CHECK(r.checked > 100);
  CHECK(r.max_rel_error < 1e-3);
  INFO("worst " << r.worst);
}

TEST_CASE("adam step") {
  Vector<float> w(1), g(1);
  w << 1.0f;
  g << 0.5f;
  std::vector<TensorRef<float>> p{ref<float>("w", w)};
  std::vector<TensorRef<float>> gr{ref<float>("g", g)};
  auto s = adam_init(p);
  auto s2 = s;
  Vector<float> w2 = w;
  std::vector<TensorRef<float>> p2{ref<float>("w", w2)};
  adam_step(p, gr, s);
  adam_step(p2, gr, s2);
  CHECK(w(0) - 1.0f == doctest::Approx(-0.001).epsilon(1e-4));
  CHECK(w(0) == w2(0));
  CHECK(s.step == 1);

  g << 0.0f;
  auto zs = adam_init(p);
  const float before = w(0);
  adam_step(p, gr, zs);
  CHECK(w(0) == before);
  CHECK(zs.step == 1);

  Vector<float> other(2);
  std::vector<TensorRef<float>> bad{ref<float>("o", other)};
  CHECK_THROWS_AS(adam_step(p, bad, s), ShapeMismatch);
}

TEST_CASE("no non-finite outputs on random inputs") {
  const auto d = toy_dims();
  EncoderParams<float> p(d);
  Rng rng(99);
  int bad = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    if (trial % 100 == 0) randomize(p.tensors(), rng, 3.0);
    std::vector<int> toks(1 + uniform_below(rng, 12));
    for (auto& t : toks) t = static_cast<int>(uniform_below(rng, 20));
    const Vector<float> e = bigru_encode(toks, p);
    const Vector<float> logits = feedforward_apply(p.head(Head::kNspPrev), e);
    const auto l = bow_nll<float>(logits, toks);
    if (!e.allFinite() || !logits.allFinite() || !std::isfinite(l.loss) || !l.grad.allFinite()) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("checkpoint round trip and validation") {
  auto d = toy_dims();
  std::vector<std::string> toks{"<unk>", "<pad>"};
  for (int i = 2; i < 20; ++i) toks.push_back("w" + std::to_string(i));
  Checkpoint c{EncoderParams<float>(d), corpus::Vocab(toks), 13, {{"losses", {"nsp"}}}};
  Rng rng(1);
  c.params.init(rng);
  const std::string bytes = serialize_checkpoint(c);
  CHECK(bytes.substr(0, 8) == "DSEVCKP1");
  Checkpoint back = parse_checkpoint(bytes);
  CHECK(back.vocab == c.vocab);
  CHECK(back.seed == 13);
  CHECK(back.params.dims == d);
  CHECK(serialize_checkpoint(back) == bytes);

  CHECK_THROWS_AS(parse_checkpoint("NOTMAGIC"), BadCheckpoint);
  CHECK_THROWS_AS(parse_checkpoint(bytes.substr(0, bytes.size() - 3)), BadCheckpoint);
  std::string tampered = bytes;
  const auto pos = tampered.find("\"hidden_dim\":4");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 14, "\"hidden_dim\":5");
  CHECK_THROWS_AS(parse_checkpoint(tampered), BadCheckpoint);
}
