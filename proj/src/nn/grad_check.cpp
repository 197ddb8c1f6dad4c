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

#include "disco/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "disco/common/rng.hpp"
#include "disco/nn/adam.hpp"

namespace disco::nn {

double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-8});
}

namespace {

struct Probe {
  double minus, center, plus;
};

Probe probe(const std::function<double()>& loss, double& x, double h, double f0, const std::string& where) {
  const double saved = x;
  x = saved + h;
  const double fp = loss();
  x = saved - h;
  const double fm = loss();
  x = saved;
  if (!std::isfinite(fp) || !std::isfinite(fm)) throw NonFiniteLoss("while probing " + where);
  return {fm, f0, fp};
}

}  // namespace

GradCheckResult grad_check(const std::function<double()>& loss, const std::vector<TensorRef<double>>& params,
                           const std::vector<TensorRef<double>>& analytic, const GradCheckOptions& options) {
  if (params.size() != analytic.size()) throw ShapeMismatch("grad_check parameter/gradient lists differ in length");
  const double f0 = loss();
  if (!std::isfinite(f0)) throw NonFiniteLoss("at the base point");

  GradCheckResult result;
  Rng rng(splitmix64(options.seed));
  const double h = options.eps;
  for (std::size_t ti = 0; ti < params.size(); ++ti) {
    const auto& p = params[ti];
    if (analytic[ti].data.size() != p.data.size()) throw ShapeMismatch("gradient for '" + p.name + "'");
    std::vector<std::size_t> coords(p.data.size());
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (coords.size() > options.coords_per_tensor) {
      shuffle(std::span(coords), rng);
      coords.resize(options.coords_per_tensor);
      std::sort(coords.begin(), coords.end());
    }
    for (std::size_t k : coords) {
      const std::string where = p.name + "[" + std::to_string(k) + "]";
      double& x = p.data[k];
      const Probe full = probe(loss, x, h, f0, where);
      const Probe half = probe(loss, x, h / 2, f0, where);
      const double numeric = (full.plus - full.minus) / (2 * h);
      const double numeric_half = (half.plus - half.minus) / h;

      const double asym_full = std::abs((full.plus - f0) - (f0 - full.minus)) / h;
      const double asym_half = std::abs((half.plus - f0) - (f0 - half.minus)) / (h / 2);
      const double floor = 1e-7 * std::max(1.0, std::abs(f0));
      const bool kink_at_point = asym_full > floor && asym_half > 0.75 * asym_full;
      const bool unstable = std::abs(numeric - numeric_half) >
                            1e-4 * std::max({std::abs(numeric), std::abs(numeric_half), 1e-3});
      if (kink_at_point || unstable) {
        ++result.skipped_kinks;
        continue;
      }
      const double err = relative_error(analytic[ti].data[k], numeric);
      ++result.checked;
      if (err > result.max_rel_error || result.worst.empty()) {
        result.max_rel_error = std::max(result.max_rel_error, err);
        if (err >= result.max_rel_error) result.worst = where;
      }
    }
  }
  return result;
}

}  // namespace disco::nn
