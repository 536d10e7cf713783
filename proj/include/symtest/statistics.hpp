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
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "symtest/construct.hpp"
#include "symtest/dataset.hpp"
#include "symtest/ecdf.hpp"
#include "symtest/errors.hpp"
#include "symtest/kernels.hpp"

namespace symtest {

namespace detail {
inline void check_nonempty(std::span<const double> s) {
  if (s.empty()) raise(ErrorCode::EmptyDraws, "statistic needs at least one draw");
}
}  // namespace detail

// Mean of sign(s_i) * exp(-s_i^2 / 2), with sign(0) = 0. Zero in expectation
// exactly when S is symmetric about the origin; always in [-1, 1].
inline double sign_cf_statistic(std::span<const double> s) {
  detail::check_nonempty(s);
  double acc = 0.0;
  for (const double v : s) {
    if (v == 0.0) continue;
    const double weight = std::exp(-0.5 * v * v);
    acc += v > 0.0 ? weight : -weight;
  }
  return acc / static_cast<double>(s.size());
}

inline double sign_cf_statistic(const SDraws& s) { return sign_cf_statistic(std::span<const double>(s.values)); }

// Centered Wilcoxon signed-rank statistic: zeros dropped, |s| ranked ascending
// with average ranks on ties, positive-rank sum minus N(N+1)/4. Zero in
// expectation under symmetry.
inline double wilcoxon_signed_rank(std::span<const double> s) {
  detail::check_nonempty(s);

  std::vector<std::size_t> order;
  order.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0.0) order.push_back(i);
  }
  if (order.empty()) {
    raise(ErrorCode::AllZeroDraws, "signed-rank statistic undefined on all-zero draws");
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(s[a]) < std::abs(s[b]);
  });

  const std::size_t n = order.size();
  double positive_rank_sum = 0.0;
  for (std::size_t start = 0; start < n;) {
    std::size_t stop = start + 1;
    while (stop < n && std::abs(s[order[stop]]) == std::abs(s[order[start]])) ++stop;
    // Average rank over the tie run [start, stop).
    const double rank = 0.5 * static_cast<double>(start + 1 + stop);
    for (std::size_t k = start; k < stop; ++k) {
      if (s[order[k]] > 0.0) positive_rank_sum += rank;
    }
    start = stop;
  }
  const double dn = static_cast<double>(n);
  return positive_rank_sum - dn * (dn + 1.0) / 4.0;
}

inline double wilcoxon_signed_rank(const SDraws& s) { return wilcoxon_signed_rank(std::span<const double>(s.values)); }

// Strictly convex h on [0, 1] with h(0) = 0, plus the closed form of
// 2 * integral_0^1 h(u) du. Built-ins: h(u) = u^p (p > 1) and h(u) = e^u - 1.
struct HSpec {
  enum class Kind { Power, ExpMinusOne };

  Kind kind = Kind::Power;
  double p = 2.0;  // Power only.

  static HSpec power(double p = 2.0) { return {Kind::Power, p}; }
  static HSpec expm() { return {Kind::ExpMinusOne, 0.0}; }

  void validate() const {
    if (kind == Kind::Power && !(p > 1.0)) {
      raise(ErrorCode::InvalidH,
            "power exponent must exceed 1 for strict convexity, got " + std::to_string(p));
    }
  }

  double operator()(double u) const {
    return kind == Kind::Power ? std::pow(u, p) : std::expm1(u);
  }

  // 2 * integral_0^1 h(u) du: 2/(p+1) for powers, 2e - 4 for e^u - 1.
  double integral_twice() const {
    return kind == Kind::Power ? 2.0 / (p + 1.0) : 2.0 * std::exp(1.0) - 4.0;
  }

  const char* name() const { return kind == Kind::Power ? "power" : "expm"; }
};

// Plug-in estimate of  int h(F) dG + int h(G) dF - 2 int_0^1 h(u) du  with
// F the mid-distribution empirical cdf of the draws and G(x) = 1 - F(-x).
// The population value is nonnegative and vanishes exactly under symmetry.
inline double h_functional(std::span<const double> s, const HSpec& h) {
  detail::check_nonempty(s);
  h.validate();
  const EmpiricalCdf cdf(s);
  double acc = 0.0;
  for (const double v : s) {
    const double f_at_minus = cdf(-v);
    // h(F(-s_i)) estimates int h(F) dG; h(G(s_i)) = h(1 - F(-s_i)) the twin.
    acc += h(f_at_minus) + h(1.0 - f_at_minus);
  }
  return acc / static_cast<double>(s.size()) - h.integral_twice();
}

inline double h_functional(const SDraws& s, const HSpec& h) {
  return h_functional(std::span<const double>(s.values), h);
}

// Kolmogorov-Smirnov distance between the empirical cdf of the draws and its
// reflection G(x) = 1 - F(-x), evaluated at all +-s_i together with the left
// limits there (the sup over the whole line is attained at one of those).
// Gaps are formed on half-integer count numerators and divided once, so a
// sign-symmetric multiset comes out exactly zero.
inline double ks_fg(std::span<const double> s) {
  detail::check_nonempty(s);
  std::vector<double> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());

  const auto count_lt = [&sorted](double x) {
    return static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x) -
                               sorted.begin());
  };
  const auto count_le = [&sorted](double x) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) -
                               sorted.begin());
  };

  double worst_numerator = 0.0;
  for (const double v0 : s) {
    for (const double v : {v0, -v0}) {
      // |F(v) - G(v)| * m  with mid weights; exact in doubles.
      const double mid = std::abs(0.5 * (count_lt(v) + count_le(v)) +
                                  0.5 * (count_lt(-v) + count_le(-v)) - m);
      // Left limits: |F(v-) - G(v-)| * m.
      const double left = std::abs(count_lt(v) + count_le(-v) - m);
      worst_numerator = std::max({worst_numerator, mid, left});
    }
  }
  return worst_numerator / m;
}

inline double ks_fg(const SDraws& s) { return ks_fg(std::span<const double>(s.values)); }

namespace detail {

// Canonical energy evaluation: each buffer holds the ordered-pair kernel
// values of one group (diagonals omitted; they are exactly zero), sorted
// ascending before the plain summation. Sorting first makes the result a
// function of the value multisets alone, so row permutations cannot change
// the output and two groups that are equal as multisets cancel exactly.
inline double energy_from_buffers(std::vector<double>& between,
                                  std::vector<double>& within_x,
                                  std::vector<double>& within_y,
                                  std::size_t n, std::size_t m) {
  std::sort(between.begin(), between.end());
  std::sort(within_x.begin(), within_x.end());
  std::sort(within_y.begin(), within_y.end());
  const double sum_b = std::accumulate(between.begin(), between.end(), 0.0);
  const double sum_x = std::accumulate(within_x.begin(), within_x.end(), 0.0);
  const double sum_y = std::accumulate(within_y.begin(), within_y.end(), 0.0);
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return sum_b / (dn * dm) - 0.5 * (sum_x / (dn * dn) + sum_y / (dm * dm));
}

}  // namespace detail

// V-statistic energy distance between the two empirical distributions:
//   mean L(x_i, y_j) - (mean L(x_i, x_j) + mean L(y_i, y_j)) / 2
// over all ordered pairs, diagonals included. Nonnegative for the strongly
// negative definite kernels provided here; exactly zero whenever the samples
// are equal as multisets.
inline double energy_statistic(const Dataset& x, const Dataset& y,
                               const KernelSpec& spec) {
  spec.validate();
  validate_pair(x, y);
  const std::size_t n = x.rows();
  const std::size_t m = y.rows();

  std::vector<double> between;
  between.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = x.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      between.push_back(kernel_value(xi, y.row(j), spec));
    }
  }

  const auto within_pairs = [&spec](const Dataset& d) {
    std::vector<double> vals;
    const std::size_t r = d.rows();
    vals.reserve(r * (r - 1));
    for (std::size_t i = 0; i < r; ++i) {
      const auto di = d.row(i);
      for (std::size_t j = i + 1; j < r; ++j) {
        const double v = kernel_value(di, d.row(j), spec);
        vals.push_back(v);
        vals.push_back(v);  // both ordered pairs (i,j) and (j,i)
      }
    }
    return vals;
  };

  std::vector<double> within_x = within_pairs(x);
  std::vector<double> within_y = within_pairs(y);
  return detail::energy_from_buffers(between, within_x, within_y, n, m);
}

}  // namespace symtest
