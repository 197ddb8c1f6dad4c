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

#ifndef DISCO_NN_GRU_HPP_
#define DISCO_NN_GRU_HPP_

#include <string>
#include <vector>

#include "disco/nn/tensor.hpp"
#include "disco/nn/tensor_ref.hpp"

namespace disco::nn {

// Gated recurrent unit with the update convention
//   z  = σ(W_z x + U_z h + b_z)
//   r  = σ(W_r x + U_r h + b_r)
//   h̃  = tanh(W_h x + U_h (r ⊙ h) + b_h)
//   h' = (1 − z) ⊙ h + z ⊙ h̃
template <typename T>
struct GruParams {
  Matrix<T> w_z, w_r, w_h;  // hidden x input
  Matrix<T> u_z, u_r, u_h;  // hidden x hidden
  Vector<T> b_z, b_r, b_h;

  GruParams() = default;
  GruParams(Eigen::Index input_dim, Eigen::Index hidden_dim)
      : w_z(Matrix<T>::Zero(hidden_dim, input_dim)),
        w_r(Matrix<T>::Zero(hidden_dim, input_dim)),
        w_h(Matrix<T>::Zero(hidden_dim, input_dim)),
        u_z(Matrix<T>::Zero(hidden_dim, hidden_dim)),
        u_r(Matrix<T>::Zero(hidden_dim, hidden_dim)),
        u_h(Matrix<T>::Zero(hidden_dim, hidden_dim)),
        b_z(Vector<T>::Zero(hidden_dim)),
        b_r(Vector<T>::Zero(hidden_dim)),
        b_h(Vector<T>::Zero(hidden_dim)) {}

  Eigen::Index input_dim() const { return w_z.cols(); }
  Eigen::Index hidden_dim() const { return w_z.rows(); }

  void init(Rng& rng) {
    for (auto* m : {&w_z, &w_r, &w_h, &u_z, &u_r, &u_h}) init_fan_in(*m, rng);
    b_z.setZero();
    b_r.setZero();
    b_h.setZero();
  }

  void append_tensors(const std::string& prefix, std::vector<TensorRef<T>>& out) {
    out.push_back(ref<T>(prefix + ".w_z", w_z));
    out.push_back(ref<T>(prefix + ".w_r", w_r));
    out.push_back(ref<T>(prefix + ".w_h", w_h));
    out.push_back(ref<T>(prefix + ".u_z", u_z));
    out.push_back(ref<T>(prefix + ".u_r", u_r));
    out.push_back(ref<T>(prefix + ".u_h", u_h));
    out.push_back(ref<T>(prefix + ".b_z", b_z));
    out.push_back(ref<T>(prefix + ".b_r", b_r));
    out.push_back(ref<T>(prefix + ".b_h", b_h));
  }

  template <typename U>
  GruParams<U> cast() const {
    GruParams<U> o;
    o.w_z = w_z.template cast<U>();
    o.w_r = w_r.template cast<U>();
    o.w_h = w_h.template cast<U>();
    o.u_z = u_z.template cast<U>();
    o.u_r = u_r.template cast<U>();
    o.u_h = u_h.template cast<U>();
    o.b_z = b_z.template cast<U>();
    o.b_r = b_r.template cast<U>();
    o.b_h = b_h.template cast<U>();
    return o;
  }
};

// Activations kept from the forward pass for backpropagation.
template <typename T>
struct GruStep {
  Vector<T> x, h_prev, z, r, h_tilde, h;
};

template <typename T>
Vector<T> gru_cell(const Vector<T>& x, const Vector<T>& h, const GruParams<T>& p, GruStep<T>* step = nullptr) {
  if (x.size() != p.input_dim() || h.size() != p.hidden_dim())
    throw DimMismatch("gru_cell input " + std::to_string(x.size()) + "/" + std::to_string(h.size()) +
                      " vs params " + std::to_string(p.input_dim()) + "/" + std::to_string(p.hidden_dim()));
  auto sig = [](T v) { return sigmoid(v); };
  const Vector<T> z = (p.w_z * x + p.u_z * h + p.b_z).unaryExpr(sig);
  const Vector<T> r = (p.w_r * x + p.u_r * h + p.b_r).unaryExpr(sig);
  const Vector<T> h_tilde = (p.w_h * x + p.u_h * r.cwiseProduct(h) + p.b_h).array().tanh().matrix();
  Vector<T> out = (Vector<T>::Ones(z.size()) - z).cwiseProduct(h) + z.cwiseProduct(h_tilde);
  if (step) *step = GruStep<T>{x, h, z, r, h_tilde, out};
  return out;
}

// Accumulates parameter gradients into `grad` and returns dL/dx and
// dL/dh_prev given dL/dh'.
template <typename T>
void gru_cell_backward(const GruStep<T>& s, const Vector<T>& dh, const GruParams<T>& p, GruParams<T>& grad,
                       Vector<T>& dx, Vector<T>& dh_prev) {
  const auto ones = Vector<T>::Ones(s.z.size());
  const Vector<T> dh_tilde = dh.cwiseProduct(s.z);
  const Vector<T> dz = dh.cwiseProduct(s.h_tilde - s.h_prev);
  dh_prev = dh.cwiseProduct(ones - s.z);

  const Vector<T> da_h = dh_tilde.cwiseProduct(ones - s.h_tilde.cwiseProduct(s.h_tilde));
  const Vector<T> rh = s.r.cwiseProduct(s.h_prev);
  grad.w_h.noalias() += da_h * s.x.transpose();
  grad.u_h.noalias() += da_h * rh.transpose();
  grad.b_h += da_h;
  const Vector<T> drh = p.u_h.transpose() * da_h;
  const Vector<T> dr = drh.cwiseProduct(s.h_prev);
  dh_prev += drh.cwiseProduct(s.r);

  const Vector<T> da_z = dz.cwiseProduct(s.z.cwiseProduct(ones - s.z));
  const Vector<T> da_r = dr.cwiseProduct(s.r.cwiseProduct(ones - s.r));
  grad.w_z.noalias() += da_z * s.x.transpose();
  grad.u_z.noalias() += da_z * s.h_prev.transpose();
  grad.b_z += da_z;
  grad.w_r.noalias() += da_r * s.x.transpose();
  grad.u_r.noalias() += da_r * s.h_prev.transpose();
  grad.b_r += da_r;

  dh_prev.noalias() += p.u_z.transpose() * da_z + p.u_r.transpose() * da_r;
  dx = p.w_z.transpose() * da_z + p.w_r.transpose() * da_r + p.w_h.transpose() * da_h;
}

}  // namespace disco::nn

#endif  // DISCO_NN_GRU_HPP_
