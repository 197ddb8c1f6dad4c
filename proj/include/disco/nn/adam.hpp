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

#ifndef DISCO_NN_ADAM_HPP_
#define DISCO_NN_ADAM_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "disco/nn/tensor_ref.hpp"

namespace disco::nn {

class ShapeMismatch : public ValidationError {
 public:
  explicit ShapeMismatch(const std::string& what) : ValidationError("shape mismatch: " + what) {}
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename T>
struct AdamState {
  AdamConfig config;
  std::int64_t step = 0;
  std::vector<std::vector<T>> m, v;  // one pair per parameter tensor
};

template <typename T>
AdamState<T> adam_init(const std::vector<TensorRef<T>>& params, const AdamConfig& config = {}) {
  AdamState<T> s;
  s.config = config;
  for (const auto& p : params) {
    s.m.emplace_back(p.data.size(), T(0));
    s.v.emplace_back(p.data.size(), T(0));
  }
  return s;
}

// Bias-corrected Adam update in place.
template <typename T>
void adam_step(std::vector<TensorRef<T>>& params, const std::vector<TensorRef<T>>& grads, AdamState<T>& s) {
  if (params.size() != grads.size() || params.size() != s.m.size())
    throw ShapeMismatch("adam got " + std::to_string(params.size()) + " parameters, " + std::to_string(grads.size()) +
                        " gradients, state for " + std::to_string(s.m.size()));
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i].data.size() != grads[i].data.size() || params[i].data.size() != s.m[i].size())
      throw ShapeMismatch("tensor '" + params[i].name + "'");

  ++s.step;
  const auto& c = s.config;
  const double t = static_cast<double>(s.step);
  const T b1 = static_cast<T>(c.beta1);
  const T b2 = static_cast<T>(c.beta2);
  const T bc1 = static_cast<T>(1.0 - std::pow(c.beta1, t));
  const T bc2 = static_cast<T>(1.0 - std::pow(c.beta2, t));
  const T lr = static_cast<T>(c.lr);
  const T eps = static_cast<T>(c.eps);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& m = s.m[i];
    auto& v = s.v[i];
    auto p = params[i].data;
    const auto g = grads[i].data;
    for (std::size_t k = 0; k < p.size(); ++k) {
      m[k] = b1 * m[k] + (T(1) - b1) * g[k];
      v[k] = b2 * v[k] + (T(1) - b2) * g[k] * g[k];
      const T m_hat = m[k] / bc1;
      const T v_hat = v[k] / bc2;
      p[k] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
}

}  // namespace disco::nn

#endif  // DISCO_NN_ADAM_HPP_
