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

#ifndef DISCO_NN_TENSOR_HPP_
#define DISCO_NN_TENSOR_HPP_

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "disco/common/error.hpp"
#include "disco/common/rng.hpp"

namespace disco::nn {

// Row-major storage so that serialized blobs and embedding rows are
// contiguous in the natural order.
template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

// Column-major work matrix: one example per column.
template <typename T>
using Batch = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

class DimMismatch : public ValidationError {
 public:
  explicit DimMismatch(const std::string& what) : ValidationError("dimension mismatch: " + what) {}
};

class NonFiniteValue : public RuntimeError {
 public:
  explicit NonFiniteValue(const std::string& where) : RuntimeError("non-finite value in " + where) {}
};

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& x) {
  return x.allFinite();
}

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& x, const std::string& where) {
  if (!x.allFinite()) throw NonFiniteValue(where);
}

// Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)] with fan_in = cols.
template <typename T>
void init_fan_in(Matrix<T>& m, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<T>(uniform_real(rng, -bound, bound));
}

template <typename T>
void init_uniform(Matrix<T>& m, double lo, double hi, Rng& rng) {
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<T>(uniform_real(rng, lo, hi));
}

template <typename T>
T sigmoid(T x) {
  // Split on sign so exp never overflows.
  if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
  const T e = std::exp(x);
  return e / (T(1) + e);
}

}  // namespace disco::nn

#endif  // DISCO_NN_TENSOR_HPP_
