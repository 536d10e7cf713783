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
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symtest/dataset.hpp"
#include "symtest/errors.hpp"
#include "symtest/kernels.hpp"
#include "symtest/rng.hpp"

namespace symtest {

// Atoms closer than this are treated as one point of the law of S; distinct
// support configurations can produce identical distances.
inline constexpr double kAtomMergeTol = 1e-12;

// Cap on 4 * |px|^2 * |py|^2, the combined term count of the naive
// enumeration behind exact_s_pmf.
inline constexpr std::uint64_t kDefaultEnumCap = 64ULL * 64ULL * 64ULL * 64ULL;

// Finite-support probability distribution on R^d.
struct DiscreteDist {
  std::vector<std::vector<double>> support;
  std::vector<double> probs;

  std::size_t size() const noexcept { return support.size(); }
  std::size_t dim() const noexcept { return support.empty() ? 0 : support.front().size(); }

  void validate() const {
    if (support.empty() || support.size() != probs.size()) {
      raise(ErrorCode::InvalidDistribution,
            "support and probability lists must be nonempty and equally long");
    }
    const std::size_t d = support.front().size();
    if (d == 0) raise(ErrorCode::InvalidDistribution, "support points must have dimension >= 1");
    double total = 0.0;
    for (const auto& point : support) {
      if (point.size() != d) {
        raise(ErrorCode::DimensionMismatch, "support points have mixed dimensions");
      }
      for (const double c : point) {
        if (!std::isfinite(c)) {
          raise(ErrorCode::InvalidDistribution, "support point has a non-finite coordinate");
        }
      }
    }
    for (const double p : probs) {
      if (!(p > 0.0) || !std::isfinite(p)) {
        raise(ErrorCode::InvalidDistribution, "probabilities must be positive and finite");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      raise(ErrorCode::InvalidDistribution,
            "probabilities sum to " + std::to_string(total) + ", expected 1");
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t j = i + 1; j < support.size(); ++j) {
        if (support[i] == support[j]) {
          raise(ErrorCode::InvalidDistribution, "support points must be pairwise distinct");
        }
      }
    }
  }
};

// Exact law of a one-dimensional variable: sorted distinct atoms with
// positive probabilities summing to one.
struct Pmf1D {
  std::vector<double> values;
  std::vector<double> probs;

  // Canonicalizes raw (value, probability) terms: sort by value and merge
  // runs closer than merge_tol, keeping the first value of each run.
  static Pmf1D from_atoms(std::vector<std::pair<double, double>> atoms,
                          double merge_tol = kAtomMergeTol) {
    std::sort(atoms.begin(), atoms.end());
    Pmf1D out;
    for (const auto& [value, prob] : atoms) {
      if (prob == 0.0) continue;
      if (!out.values.empty() && value - out.values.back() <= merge_tol) {
        out.probs.back() += prob;
      } else {
        out.values.push_back(value + 0.0);  // normalizes -0.0
        out.probs.push_back(prob);
      }
    }
    return out;
  }

  std::size_t size() const noexcept { return values.size(); }

  double total() const noexcept {
    double t = 0.0;
    for (const double p : probs) t += p;
    return t;
  }

  // Probability attached to the atom nearest v, or 0 when none lies within tol.
  double prob_at(double v, double tol = kAtomMergeTol) const noexcept {
    const auto it = std::lower_bound(values.begin(), values.end(), v - tol);
    if (it == values.end() || *it > v + tol) return 0.0;
    return probs[static_cast<std::size_t>(it - values.begin())];
  }

  // P(value <= x).
  double cdf(double x) const noexcept {
    double acc = 0.0;
    for (std::size_t k = 0; k < values.size() && values[k] <= x; ++k) acc += probs[k];
    return acc;
  }
};

inline bool pmf_equal(const Pmf1D& a, const Pmf1D& b, double tol) {
  const auto covered = [tol](const Pmf1D& lhs, const Pmf1D& rhs) {
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      if (std::abs(lhs.probs[k] - rhs.prob_at(lhs.values[k])) > tol) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

namespace detail {

inline void check_oracle_pair(const DiscreteDist& px, const DiscreteDist& py,
                              std::uint64_t term_cap) {
  px.validate();
  py.validate();
  if (px.dim() != py.dim()) {
    raise(ErrorCode::DimensionMismatch,
          "supports have dimensions " + std::to_string(px.dim()) + " and " +
              std::to_string(py.dim()));
  }
  const std::uint64_t nx = px.size();
  const std::uint64_t ny = py.size();
  const std::uint64_t combined = 4ULL * nx * nx * ny * ny;
  if (combined > term_cap) {
    raise(ErrorCode::SupportTooLarge,
          "enumeration would touch " + std::to_string(combined) +
              " terms, cap is " + std::to_string(term_cap));
  }
}

}  // namespace detail

// Exact law of the kernel distance d(A, B) for independent A ~ pa, B ~ pb.
inline Pmf1D exact_distance_pmf(const DiscreteDist& pa, const DiscreteDist& pb,
                                const KernelSpec& spec) {
  spec.validate();
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(pa.size() * pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const std::span<const double> a(pa.support[i]);
    for (std::size_t j = 0; j < pb.size(); ++j) {
      atoms.emplace_back(kernel_value(a, std::span<const double>(pb.support[j]), spec),
                         pa.probs[i] * pb.probs[j]);
    }
  }
  return Pmf1D::from_atoms(std::move(atoms));
}

// Equal-weight mixture of two laws.
inline Pmf1D equal_mixture(const Pmf1D& a, const Pmf1D& b) {
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(a.size() + b.size());
  for (std::size_t k = 0; k < a.size(); ++k) atoms.emplace_back(a.values[k], 0.5 * a.probs[k]);
  for (std::size_t k = 0; k < b.size(); ++k) atoms.emplace_back(b.values[k], 0.5 * b.probs[k]);
  return Pmf1D::from_atoms(std::move(atoms));
}

// Exact law of S by enumerating (X, X', Y, Y', eps, delta) with both bits
// fair. Conditioning on the bits collapses the enumeration to three branches:
//   delta=1           (prob 1/2): S = +d(X, Y)
//   delta=0, eps=1    (prob 1/4): S = -d(X, X')
//   delta=0, eps=0    (prob 1/4): S = -d(Y, Y')
inline Pmf1D exact_s_pmf(const DiscreteDist& px, const DiscreteDist& py,
                         const KernelSpec& spec,
                         std::uint64_t term_cap = kDefaultEnumCap) {
  spec.validate();
  detail::check_oracle_pair(px, py, term_cap);

  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(px.size() * py.size() + px.size() * px.size() + py.size() * py.size());

  const auto add_branch = [&](const DiscreteDist& pa, const DiscreteDist& pb,
                              double branch_prob, double sign) {
    for (std::size_t i = 0; i < pa.size(); ++i) {
      const std::span<const double> a(pa.support[i]);
      for (std::size_t j = 0; j < pb.size(); ++j) {
        const double d = kernel_value(a, std::span<const double>(pb.support[j]), spec);
        atoms.emplace_back(sign * d, branch_prob * pa.probs[i] * pb.probs[j]);
      }
    }
  };

  add_branch(px, py, 0.5, +1.0);
  add_branch(px, px, 0.25, -1.0);
  add_branch(py, py, 0.25, -1.0);
  return Pmf1D::from_atoms(std::move(atoms));
}

// Characteristic function of a finite law at t.
inline std::complex<double> exact_cf(const Pmf1D& pmf, double t) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    acc += pmf.probs[k] * std::polar(1.0, t * pmf.values[k]);
  }
  return acc;
}

// Max over the grid of | cf_S(t) - ( cf_between(t)/2 + (cf_wx(-t) + cf_wy(-t))/4 ) |.
// The identity is structural in the construction of S, so the residual is
// rounding noise for any valid pair.
inline double cf_identity_check(const DiscreteDist& px, const DiscreteDist& py,
                                const KernelSpec& spec, std::span<const double> t_grid,
                                std::uint64_t term_cap = kDefaultEnumCap) {
  const Pmf1D s = exact_s_pmf(px, py, spec, term_cap);
  const Pmf1D between = exact_distance_pmf(px, py, spec);
  const Pmf1D within_x = exact_distance_pmf(px, px, spec);
  const Pmf1D within_y = exact_distance_pmf(py, py, spec);

  double worst = 0.0;
  for (const double t : t_grid) {
    const std::complex<double> lhs = exact_cf(s, t);
    const std::complex<double> rhs = 0.5 * exact_cf(between, t) +
                                     0.25 * (exact_cf(within_x, -t) + exact_cf(within_y, -t));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

// True when every atom (v, q) with |v| beyond the merge tolerance has a
// mirror atom at -v of probability within tol; the atom at zero is free.
inline bool symmetry_verdict(const Pmf1D& pmf, double tol) {
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double v = pmf.values[k];
    if (std::abs(v) <= kAtomMergeTol) continue;
    if (std::abs(pmf.probs[k] - pmf.prob_at(-v)) > tol) return false;
  }
  return true;
}

// Exact value of  E L(X,Y) - (E L(X,X') + E L(Y,Y')) / 2  over the supports.
// Zero exactly when the two distributions coincide (strong negative
// definiteness of both kernels).
inline double population_energy(const DiscreteDist& px, const DiscreteDist& py,
                                const KernelSpec& spec) {
  spec.validate();
  px.validate();
  py.validate();
  if (px.dim() != py.dim()) {
    raise(ErrorCode::DimensionMismatch, "supports have different dimensions");
  }
  const auto mean_kernel = [&spec](const DiscreteDist& pa, const DiscreteDist& pb) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
      const std::span<const double> a(pa.support[i]);
      for (std::size_t j = 0; j < pb.size(); ++j) {
        acc += pa.probs[i] * pb.probs[j] *
               kernel_value(a, std::span<const double>(pb.support[j]), spec);
      }
    }
    return acc;
  };
  return mean_kernel(px, py) -
         0.5 * (mean_kernel(px, px) + mean_kernel(py, py));
}

// Draws `rows` i.i.d. observations by inverse-cdf lookup on the atom list.
inline Dataset sample_dataset(const DiscreteDist& dist, std::size_t rows,
                              RngStream& stream) {
  dist.validate();
  std::vector<double> cumulative(dist.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    acc += dist.probs[k];
    cumulative[k] = acc;
  }
  cumulative.back() = 1.0;

  Dataset out(rows, dist.dim());
  for (std::size_t r = 0; r < rows; ++r) {
    const double u = stream.next_double();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t k = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative.begin()), dist.size() - 1);
    std::copy_n(dist.support[k].data(), dist.dim(), &out.at(r, 0));
  }
  return out;
}

// Kolmogorov-Smirnov distance between the empirical law of the draws and an
// exact law, evaluated at the exact law's atoms (left limits included).
inline double ks_distance(std::span<const double> draws, const Pmf1D& pmf) {
  if (draws.empty()) raise(ErrorCode::EmptyDraws, "no draws");
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());

  double worst = 0.0;
  double cum = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double v = pmf.values[k];
    const double emp_lt =
        static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), v - kAtomMergeTol) -
                            sorted.begin()) / m;
    const double emp_le =
        static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), v + kAtomMergeTol) -
                            sorted.begin()) / m;
    worst = std::max({worst, std::abs(emp_lt - cum), std::abs(emp_le - (cum + pmf.probs[k]))});
    cum += pmf.probs[k];
  }
  return worst;
}

}  // namespace symtest
