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
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symtest/errors.hpp"

namespace symtest {

// One multivariate sample: a dense row-major n x d matrix of doubles.
// Immutable-by-convention after construction; all accessors are const-safe
// and the type is freely shareable across threads.
class Dataset {
 public:
  Dataset() = default;

  Dataset(std::size_t rows, std::size_t dim)
      : rows_(rows), dim_(dim), values_(rows * dim, 0.0) {}

  Dataset(std::size_t rows, std::size_t dim, std::vector<double> values)
      : rows_(rows), dim_(dim), values_(std::move(values)) {
    if (values_.size() != rows_ * dim_) {
      throw std::logic_error("Dataset: values size does not match rows*dim");
    }
  }

  static Dataset from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> copied;
    for (const auto& r : rows) copied.emplace_back(r);
    return from_rows(copied);
  }

  static Dataset from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t d = n == 0 ? 0 : rows.front().size();
    std::vector<double> flat;
    flat.reserve(n * d);
    for (const auto& r : rows) {
      if (r.size() != d) {
        throw std::logic_error("Dataset::from_rows: ragged input");
      }
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return Dataset(n, d, std::move(flat));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }

  double at(std::size_t i, std::size_t j) const noexcept { return values_[i * dim_ + j]; }
  double& at(std::size_t i, std::size_t j) noexcept { return values_[i * dim_ + j]; }

  const std::vector<double>& values() const noexcept { return values_; }

  bool operator==(const Dataset& other) const = default;

  // Checks n >= 1, d >= 1 and that every entry is finite.
  void validate() const {
    if (rows_ == 0 || dim_ == 0) {
      raise(ErrorCode::EmptyDataset, "dataset must have at least one row and one column");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        raise(ErrorCode::NonFiniteValue,
              "non-finite entry at row " + std::to_string(i / dim_ + 1) +
                  ", column " + std::to_string(i % dim_ + 1));
      }
    }
  }

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

// Both datasets valid and of equal dimensionality.
inline void validate_pair(const Dataset& x, const Dataset& y) {
  x.validate();
  y.validate();
  if (x.dim() != y.dim()) {
    raise(ErrorCode::DimensionMismatch,
          "dimensions differ: " + std::to_string(x.dim()) + " vs " +
              std::to_string(y.dim()));
  }
}

}  // namespace symtest
