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

#ifndef DISCO_NN_GRAD_CHECK_HPP_
#define DISCO_NN_GRAD_CHECK_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "disco/nn/tensor_ref.hpp"

namespace disco::nn {

class NonFiniteLoss : public RuntimeError {
 public:
  explicit NonFiniteLoss(const std::string& where) : RuntimeError("non-finite loss " + where) {}
};

struct GradCheckOptions {
  double eps = 1e-4;
  std::size_t coords_per_tensor = 16;  // all coordinates when the tensor is smaller
  std::uint64_t seed = 1;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst;  // "tensor[index]"
  std::size_t checked = 0;
  std::size_t skipped_kinks = 0;
};

// |a - n| / max(|a|, |n|, 1e-8)
double relative_error(double analytic, double numeric);

// Compares `analytic` against central differences of `loss`, which must read
// the current values of `params`. Each probed coordinate is restored
// afterwards. Coordinates where the loss is not differentiable at the scale of
// the step (one-sided slopes disagree by an amount that does not shrink with
// the step, or the central difference moves when the step is halved) are
// counted in `skipped_kinks` instead of being compared.
GradCheckResult grad_check(const std::function<double()>& loss, const std::vector<TensorRef<double>>& params,
                           const std::vector<TensorRef<double>>& analytic, const GradCheckOptions& options = {});

}  // namespace disco::nn

#endif  // DISCO_NN_GRAD_CHECK_HPP_
