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

#ifndef DISCO_NN_FEEDFORWARD_HPP_
#define DISCO_NN_FEEDFORWARD_HPP_

#include <string>
#include <vector>

#include "disco/nn/tensor.hpp"
#include "disco/nn/tensor_ref.hpp"

namespace disco::nn {

template <typename T>
struct Dense {
  Matrix<T> w;  // out x in
  Vector<T> b;

  Dense() = default;
  Dense(Eigen::Index in, Eigen::Index out) : w(Matrix<T>::Zero(out, in)), b(Vector<T>::Zero(out)) {}

  Eigen::Index in_dim() const { return w.cols(); }
  Eigen::Index out_dim() const { return w.rows(); }

  Batch<T> apply(const Batch<T>& x) const {
    if (x.rows() != in_dim())
      throw DimMismatch("dense layer expects " + std::to_string(in_dim()) + " inputs, got " + std::to_string(x.rows()));
    Batch<T> y = w * x;
    y.colwise() += b;
    return y;
  }

  // dy: out x batch. Accumulates into grad and returns dx.
  Batch<T> backward(const Batch<T>& x, const Batch<T>& dy, Dense& grad) const {
    grad.w.noalias() += dy * x.transpose();
    grad.b += dy.rowwise().sum();
    return w.transpose() * dy;
  }

  void init(Rng& rng) {
    init_fan_in(w, rng);
    b.setZero();
  }

  void append_tensors(const std::string& prefix, std::vector<TensorRef<T>>& out) {
    out.push_back(ref<T>(prefix + ".w", w));
    out.push_back(ref<T>(prefix + ".b", b));
  }

  template <typename U>
  Dense<U> cast() const {
    Dense<U> o;
    o.w = w.template cast<U>();
    o.b = b.template cast<U>();
    return o;
  }
};

// Decoder head: two ReLU hidden layers and a linear output layer.
template <typename T>
struct FeedForward {
  Dense<T> hidden1, hidden2, output;

  FeedForward() = default;
  FeedForward(Eigen::Index in, Eigen::Index hidden, Eigen::Index out)
      : hidden1(in, hidden), hidden2(hidden, hidden), output(hidden, out) {}

  Eigen::Index in_dim() const { return hidden1.in_dim(); }
  Eigen::Index out_dim() const { return output.out_dim(); }

  void init(Rng& rng) {
    hidden1.init(rng);
    hidden2.init(rng);
    output.init(rng);
  }

  void append_tensors(const std::string& prefix, std::vector<TensorRef<T>>& out) {
    hidden1.append_tensors(prefix + ".hidden1", out);
    hidden2.append_tensors(prefix + ".hidden2", out);
    output.append_tensors(prefix + ".output", out);
  }

  template <typename U>
  FeedForward<U> cast() const {
    FeedForward<U> o;
    o.hidden1 = hidden1.template cast<U>();
    o.hidden2 = hidden2.template cast<U>();
    o.output = output.template cast<U>();
    return o;
  }
};

template <typename T>
struct FeedForwardCache {
  Batch<T> input, a1, a2;  // a = relu(pre-activation)
};

template <typename T>
Batch<T> feedforward_apply(const FeedForward<T>& f, const Batch<T>& x, FeedForwardCache<T>* cache = nullptr) {
  Batch<T> a1 = f.hidden1.apply(x).cwiseMax(T(0));
  Batch<T> a2 = f.hidden2.apply(a1).cwiseMax(T(0));
  Batch<T> logits = f.output.apply(a2);
  if (cache) *cache = FeedForwardCache<T>{x, std::move(a1), std::move(a2)};
  return logits;
}

template <typename T>
Vector<T> feedforward_apply(const FeedForward<T>& f, const Vector<T>& x) {
  return feedforward_apply(f, Batch<T>(x)).col(0);
}

// Accumulates into grad; returns dL/dx.
template <typename T>
Batch<T> feedforward_backward(const FeedForward<T>& f, const FeedForwardCache<T>& c, const Batch<T>& dlogits,
                              FeedForward<T>& grad) {
  Batch<T> da2 = f.output.backward(c.a2, dlogits, grad.output);
  da2 = (c.a2.array() > T(0)).select(da2, T(0));
  Batch<T> da1 = f.hidden2.backward(c.a1, da2, grad.hidden2);
  da1 = (c.a1.array() > T(0)).select(da1, T(0));
  return f.hidden1.backward(c.input, da1, grad.hidden1);
}

}  // namespace disco::nn

#endif  // DISCO_NN_FEEDFORWARD_HPP_
