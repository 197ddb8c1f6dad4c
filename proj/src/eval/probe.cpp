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

#include "disco/eval/probe.hpp"

#include <numeric>
#include <set>

#include "disco/nn/adam.hpp"

namespace disco::eval {

ProbeSpec default_probe_spec(const std::string& task, synth::TaskKind kind, long classes, long embedding_dim) {
  ProbeSpec s;
  s.task = task;
  s.construction = default_construction(kind);
  s.classes = classes;
  if (kind == synth::TaskKind::kCoherence)
    s.hidden_width = std::min<long>(2000, 4 * feature_multiple(s.construction) * embedding_dim);
  return s;
}

double accuracy(const ProbeParams<float>& p, const Batch<float>& x, const std::vector<int>& labels) {
  if (x.cols() == 0) return 0.0;
  const auto pred = probe_predict(p, x);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == labels[i];
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

namespace {

void check_inputs(const Batch<float>& x, const std::vector<int>& y, long classes, const char* what) {
  if (static_cast<std::size_t>(x.cols()) != y.size())
    throw ValidationError(std::string(what) + ": feature and label counts differ");
  for (int l : y)
    if (l < 0 || l >= classes) throw nn::LabelOutOfRange(l, classes);
  nn::require_finite(x, std::string(what) + " features");
}

struct Run {
  ProbeParams<float> best;
  double dev_accuracy = -1.0;
  int epochs = 0;
};

Run fit(const Batch<float>& x, const std::vector<int>& y, const Batch<float>& dev_x, const std::vector<int>& dev_y,
        const ProbeSpec& spec, double l2) {
  ProbeParams<float> p(x.rows(), spec.hidden_width, spec.classes);
  Rng init = derive_rng(spec.seed, "probe-init:" + spec.task);
  if (p.hidden_width > 0) p.hidden.init(init);
  p.output.init(init);
  auto tensors = p.tensors();
  nn::AdamConfig ac;
  ac.lr = spec.lr;
  auto state = nn::adam_init(tensors, ac);
  ProbeParams<float> grad(x.rows(), spec.hidden_width, spec.classes);
  auto grad_tensors = grad.tensors();

  std::vector<long> order(static_cast<std::size_t>(x.cols()));
  std::iota(order.begin(), order.end(), 0L);
  Run run;
  int since_best = 0;
  const auto bs = static_cast<std::size_t>(spec.batch_size);
  for (int epoch = 1; epoch <= spec.max_epochs; ++epoch) {
    Rng rng = derive_rng(spec.seed, "probe-epoch:" + spec.task, static_cast<std::uint64_t>(epoch));
    shuffle(std::span(order), rng);
    for (std::size_t start = 0; start < order.size(); start += bs) {
      const std::size_t end = std::min(order.size(), start + bs);
      Batch<float> bx(x.rows(), static_cast<long>(end - start));
      std::vector<int> by(end - start);
      for (std::size_t i = start; i < end; ++i) {
        bx.col(static_cast<long>(i - start)) = x.col(order[i]);
        by[i - start] = y[static_cast<std::size_t>(order[i])];
      }
      nn::zero(grad_tensors);
      const float loss = probe_loss(p, bx, by, l2, &grad);
      if (!std::isfinite(loss)) throw nn::NonFiniteValue("probe loss for " + spec.task);
      nn::adam_step(tensors, grad_tensors, state);
    }
    run.epochs = epoch;
    const double acc = accuracy(p, dev_x, dev_y);
    if (acc > run.dev_accuracy) {
      run.dev_accuracy = acc;
      run.best = p;
      since_best = 0;
    } else if (++since_best >= spec.patience) {
      break;
    }
  }
  return run;
}

}  // namespace

TrainedProbe train_probe(const Batch<float>& train_x, const std::vector<int>& train_y, const Batch<float>& dev_x,
                         const std::vector<int>& dev_y, const ProbeSpec& spec) {
  if (spec.classes < 2) throw ValidationError("probe needs at least two classes");
  if (spec.l2_grid.empty()) throw ValidationError("empty l2 grid");
  check_inputs(train_x, train_y, spec.classes, "train");
  check_inputs(dev_x, dev_y, spec.classes, "dev");
  if (dev_x.cols() > 0 && dev_x.rows() != train_x.rows()) throw nn::DimMismatch("dev features differ from train");
  if (std::set<int>(train_y.begin(), train_y.end()).size() < 2) throw DegenerateLabels();
  if (dev_x.cols() == 0) throw ValidationError("probe training needs a non-empty dev split");

  TrainedProbe best;
  best.dev_accuracy = -1.0;
  for (double l2 : spec.l2_grid) {
    if (!(l2 >= 0.0)) throw ValidationError("l2 values must be >= 0");
    Run run = fit(train_x, train_y, dev_x, dev_y, spec, l2);
    if (run.dev_accuracy > best.dev_accuracy) {
      best.params = std::move(run.best);
      best.l2 = l2;
      best.dev_accuracy = run.dev_accuracy;
      best.epochs = run.epochs;
    }
  }
  return best;
}

EvalResult evaluate_probe(const TrainedProbe& probe, const Batch<float>& test_x, const std::vector<int>& test_y,
                          const ProbeSpec& spec) {
  if (test_x.cols() == 0) throw EmptyTestSet();
  check_inputs(test_x, test_y, spec.classes, "test");
  EvalResult r;
  r.task = spec.task;
  r.dev_accuracy = probe.dev_accuracy;
  r.test_accuracy = accuracy(probe.params, test_x, test_y);
  r.l2 = probe.l2;
  r.seed = spec.seed;
  r.feature_dim = test_x.rows();
  return r;
}

}  // namespace disco::eval
