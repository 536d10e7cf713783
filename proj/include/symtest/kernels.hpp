// Copyright 2026 the symtest authors.
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

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "symtest/dataset.hpp"
#include "symtest/errors.hpp"

namespace symtest {

enum class KernelKind {
  EuclideanNorm,  // ||a - b||
  GaussianSnd,    // 1 - exp(-||a - b||^2 / (2 scale^2)), in [0, 1)
};

// Selects the distance used to compare observations. Both choices are
// strongly negative definite, so the energy functional built from either is
// nonnegative and vanishes only at equal distributions.
struct KernelSpec {
  KernelKind kind = KernelKind::EuclideanNorm;
  double scale = 1.0;  // Gaussian only; scale = 1 is the canonical kernel.

  static KernelSpec euclidean() { return {KernelKind::EuclideanNorm, 1.0}; }
  static KernelSpec gaussian(double scale = 1.0) {
    return {KernelKind::GaussianSnd, scale};
  }

  void validate() const {
    if (kind == KernelKind::GaussianSnd && !(scale > 0.0)) {
      raise(ErrorCode::NonPositiveScale,
            "gaussian kernel scale must be positive, got " + std::to_string(scale));
    }
  }

  const char* name() const {
    return kind == KernelKind::EuclideanNorm ? "euclidean" : "gauss";
  }
};

namespace detail {
inline void check_same_dim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    raise(ErrorCode::DimensionMismatch,
          "points of dimension " + std::to_string(a.size()) + " and " +
              std::to_string(b.size()));
  }
}
}  // namespace detail

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  detail::check_same_dim(a, b);
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    acc += diff * diff;
  }
  return acc;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

inline double snd_kernel(std::span<const double> a, std::span<const double> b,
                         double scale = 1.0) {
  if (!(scale > 0.0)) {
    raise(ErrorCode::NonPositiveScale,
          "gaussian kernel scale must be positive, got " + std::to_string(scale));
  }
  const double d2 = squared_distance(a, b);
  // -expm1 keeps precision for nearby points where exp(...) is close to 1.
  return -std::expm1(-d2 / (2.0 * scale * scale));
}

inline double kernel_value(std::span<const double> a, std::span<const double> b,
                           const KernelSpec& spec) {
  if (spec.kind == KernelKind::EuclideanNorm) return distance(a, b);
  return snd_kernel(a, b, spec.scale);
}

// Dense rows x cols matrix of kernel evaluations.
class PairwiseMatrix {
 public:
  PairwiseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
  double& at(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

// values[i][j] = kernel_value(xs[i], ys[j]); identical to elementwise calls.
inline PairwiseMatrix pairwise(const Dataset& xs, const Dataset& ys,
                               const KernelSpec& spec) {
  spec.validate();
  validate_pair(xs, ys);
  PairwiseMatrix out(xs.rows(), ys.rows());
  for (std::size_t i = 0; i < xs.rows(); ++i) {
    const auto xi = xs.row(i);
    for (std::size_t j = 0; j < ys.rows(); ++j) {
      out.at(i, j) = kernel_value(xi, ys.row(j), spec);
    }
  }
  return out;
}

}  // namespace symtest
