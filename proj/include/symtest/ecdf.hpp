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

#include <algorithm>
#include <span>
#include <vector>

#include "symtest/errors.hpp"

namespace symtest {

// Empirical cdf with the mid-distribution convention
//   F(x) = (#{s_i < x} + 0.5 * #{s_i = x}) / m.
// Giving atoms half weight makes an exactly sign-symmetric multiset satisfy
// F(x) = 1 - F(-x) at its own atoms, so null statistics built from F and its
// reflection are exactly zero even in the presence of ties.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::span<const double> sample)
      : sorted_(sample.begin(), sample.end()) {
    if (sorted_.empty()) {
      raise(ErrorCode::EmptyDraws, "empirical cdf needs at least one value");
    }
    std::sort(sorted_.begin(), sorted_.end());
  }

  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted() const noexcept { return sorted_; }

  // Mid-distribution value at x.
  double operator()(double x) const noexcept {
    const auto lo = std::lower_bound(sorted_.begin(), sorted_.end(), x);
    const auto hi = std::upper_bound(lo, sorted_.end(), x);
    const double below = static_cast<double>(lo - sorted_.begin());
    const double ties = static_cast<double>(hi - lo);
    return (below + 0.5 * ties) / static_cast<double>(sorted_.size());
  }

  // Left limit: #{s_i < x} / m.
  double left(double x) const noexcept {
    const auto lo = std::lower_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(lo - sorted_.begin()) /
           static_cast<double>(sorted_.size());
  }

  // Right-continuous value: #{s_i <= x} / m.
  double right(double x) const noexcept {
    const auto hi = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(hi - sorted_.begin()) /
           static_cast<double>(sorted_.size());
  }

 private:
  std::vector<double> sorted_;
};

}  // namespace symtest
