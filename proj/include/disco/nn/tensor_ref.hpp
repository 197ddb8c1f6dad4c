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

#ifndef DISCO_NN_TENSOR_REF_HPP_
#define DISCO_NN_TENSOR_REF_HPP_

#include <span>
#include <string>
#include <vector>

#include "disco/nn/tensor.hpp"

namespace disco::nn {

// Named flat view of one parameter tensor. Parameter containers expose their
// tensors as a list of these, in a fixed order that is also the checkpoint
// blob order.
template <typename T>
struct TensorRef {
  std::string name;
  std::span<T> data;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
};

template <typename T, typename Derived>
TensorRef<T> ref(std::string name, Eigen::PlainObjectBase<Derived>& m) {
  return TensorRef<T>{std::move(name), std::span<T>(m.data(), static_cast<std::size_t>(m.size())), m.rows(), m.cols()};
}

template <typename T>
void zero(std::vector<TensorRef<T>>& tensors) {
  for (auto& t : tensors) std::fill(t.data.begin(), t.data.end(), T(0));
}

template <typename T>
std::size_t parameter_count(const std::vector<TensorRef<T>>& tensors) {
  std::size_t n = 0;
  for (const auto& t : tensors) n += t.data.size();
  return n;
}

}  // namespace disco::nn

#endif  // DISCO_NN_TENSOR_REF_HPP_
