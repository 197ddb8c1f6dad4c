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

#ifndef DISCO_EVAL_PROBE_HPP_
#define DISCO_EVAL_PROBE_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disco/eval/features.hpp"
#include "disco/nn/feedforward.hpp"
#include "disco/nn/losses.hpp"

namespace disco::eval {

using nn::Batch;

class DegenerateLabels : public ValidationError {
 public:
  DegenerateLabels() : ValidationError("training labels contain a single class") {}
};

class EmptyTestSet : public ValidationError {
 public:
  EmptyTestSet() : ValidationError("test set is empty") {}
};

struct ProbeSpec {
  std::string task;
  Construction construction = Construction::kSingle;
  long classes = 2;
  long hidden_width = 0;  // 0: logistic regression; otherwise a sigmoid layer
  double lr = 1e-3;
  int batch_size = 64;
  int max_epochs = 100;
  int patience = 5;
  std::vector<double> l2_grid{0.0, 1e-4, 1e-3, 1e-2};
  std::uint64_t seed = 13;
};

// Coherence probes get a sigmoid hidden layer of min(2000, 4 * feature_dim).
ProbeSpec default_probe_spec(const std::string& task, synth::TaskKind kind, long classes, long embedding_dim);

template <typename T>
struct ProbeParams {
  long hidden_width = 0;
  nn::Dense<T> hidden;
  nn::Dense<T> output;

  ProbeParams() = default;
  ProbeParams(long in, long hidden_w, long classes)
      : hidden_width(hidden_w),
        hidden(hidden_w > 0 ? nn::Dense<T>(in, hidden_w) : nn::Dense<T>()),
        output(hidden_w > 0 ? hidden_w : in, classes) {}

  std::vector<nn::TensorRef<T>> tensors() {
    std::vector<nn::TensorRef<T>> out;
    if (hidden_width > 0) hidden.append_tensors("probe.hidden", out);
    output.append_tensors("probe.output", out);
    return out;
  }
};

template <typename T>
Batch<T> probe_logits(const ProbeParams<T>& p, const Batch<T>& x, Batch<T>* hidden_out = nullptr) {
  if (p.hidden_width == 0) return p.output.apply(x);
  Batch<T> h = p.hidden.apply(x).unaryExpr([](T v) { return nn::sigmoid(v); });
  Batch<T> logits = p.output.apply(h);
  if (hidden_out) *hidden_out = std::move(h);
  return logits;
}

// Mean cross-entropy over the columns of x plus l2/2 * squared norm of the
// weight matrices (biases are not penalized). Gradients accumulate into grad.
template <typename T>
T probe_loss(const ProbeParams<T>& p, const Batch<T>& x, const std::vector<int>& labels, double l2,
             ProbeParams<T>* grad = nullptr) {
  Batch<T> h;
  const Batch<T> logits = probe_logits(p, x, &h);
  const T inv_n = T(1) / static_cast<T>(x.cols());
  const T lambda = static_cast<T>(l2);
  T loss = T(0);
  Batch<T> dlogits(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    auto r = nn::softmax_xent<T>(logits.col(j), labels[static_cast<std::size_t>(j)]);
    loss += r.loss * inv_n;
    dlogits.col(j) = r.grad * inv_n;
  }
  loss += T(0.5) * lambda * p.output.w.squaredNorm();
  if (p.hidden_width > 0) loss += T(0.5) * lambda * p.hidden.w.squaredNorm();
  if (!grad) return loss;

  const Batch<T>& top_in = p.hidden_width > 0 ? h : x;
  Batch<T> dh = p.output.backward(top_in, dlogits, grad->output);
  grad->output.w += lambda * p.output.w;
  if (p.hidden_width > 0) {
    dh = dh.cwiseProduct(h.cwiseProduct((Batch<T>::Ones(h.rows(), h.cols()) - h)));
    p.hidden.backward(x, dh, grad->hidden);
    grad->hidden.w += lambda * p.hidden.w;
  }
  return loss;
}

// Argmax per column; ties go to the lowest class index.
template <typename T>
std::vector<int> probe_predict(const ProbeParams<T>& p, const Batch<T>& x) {
  const Batch<T> logits = probe_logits(p, x);
  std::vector<int> out(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < logits.rows(); ++k)
      if (logits(k, j) > logits(best, j)) best = k;
    out[static_cast<std::size_t>(j)] = static_cast<int>(best);
  }
  return out;
}

struct TrainedProbe {
  ProbeParams<float> params;
  double l2 = 0.0;
  double dev_accuracy = 0.0;
  int epochs = 0;  // epochs run for the chosen l2
};

struct EvalResult {
  std::string task;
  double dev_accuracy = 0.0;
  double test_accuracy = 0.0;
  double l2 = 0.0;
  std::uint64_t seed = 0;
  long feature_dim = 0;
  bool operator==(const EvalResult&) const = default;
};

double accuracy(const ProbeParams<float>& p, const Batch<float>& x, const std::vector<int>& labels);

// Adam on minibatches; for each l2 in the grid, early stopping on dev
// accuracy restores the best epoch; the l2 with the best dev accuracy wins
// (earlier grid entries win ties).
TrainedProbe train_probe(const Batch<float>& train_x, const std::vector<int>& train_y, const Batch<float>& dev_x,
                         const std::vector<int>& dev_y, const ProbeSpec& spec);

EvalResult evaluate_probe(const TrainedProbe& probe, const Batch<float>& test_x, const std::vector<int>& test_y,
                          const ProbeSpec& spec);

}  // namespace disco::eval

#endif  // DISCO_EVAL_PROBE_HPP_
