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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symtest/construct.hpp"
#include "symtest/dataset.hpp"
#include "symtest/errors.hpp"
#include "symtest/kernels.hpp"
#include "symtest/parallel.hpp"
#include "symtest/rng.hpp"
#include "symtest/statistics.hpp"

namespace symtest {

enum class TestStat {
  SignCf,
  Wilcoxon,
  HFunc,
  KsFg,
  Energy,
};

inline constexpr TestStat kAllTests[] = {TestStat::SignCf, TestStat::Wilcoxon,
                                         TestStat::HFunc, TestStat::KsFg,
                                         TestStat::Energy};

inline const char* test_name(TestStat t) {
  switch (t) {
    case TestStat::SignCf: return "sign-cf";
    case TestStat::Wilcoxon: return "wilcoxon";
    case TestStat::HFunc: return "hfunc";
    case TestStat::KsFg: return "ks-fg";
    case TestStat::Energy: return "energy";
  }
  return "?";
}

// Canonical position of a test in kAllTests; stable across selections, so a
// test keeps its stream-id block no matter which menu it was picked from.
inline std::size_t test_index(TestStat t) {
  return static_cast<std::size_t>(t);
}

inline std::optional<TestStat> parse_test_name(std::string_view name) {
  for (const TestStat t : kAllTests) {
    if (name == test_name(t)) return t;
  }
  return std::nullopt;
}

// Outcome of one calibrated test. p_value always lies in [1/(B+1), 1] by the
// add-one convention, and reject <=> p_value <= alpha.
struct TestReport {
  std::string test_name;
  double statistic = 0.0;
  double p_value = 1.0;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  bool reject = false;
};

// Which symmetry statistic a sign-flip test should drive; hfunc carries its h.
struct SymmetrySelector {
  TestStat kind = TestStat::SignCf;
  HSpec h = HSpec::power(2.0);

  double operator()(std::span<const double> s) const {
    switch (kind) {
      case TestStat::SignCf: return sign_cf_statistic(s);
      case TestStat::Wilcoxon: return wilcoxon_signed_rank(s);
      case TestStat::HFunc: return h_functional(s, h);
      case TestStat::KsFg: return ks_fg(s);
      case TestStat::Energy: break;
    }
    raise(ErrorCode::InvalidScenario, "energy is not a symmetry statistic");
  }
};

namespace detail {

inline void check_calibration_args(std::uint64_t replicates, double alpha) {
  if (replicates < 1) {
    raise(ErrorCode::ZeroReplicates, "permutation replicates must be >= 1");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    raise(ErrorCode::InvalidScenario, "alpha must lie in (0, 1)");
  }
}

inline double add_one_p(std::uint64_t exceedances, std::uint64_t replicates) {
  return static_cast<double>(1 + exceedances) / static_cast<double>(replicates + 1);
}

}  // namespace detail

// Calibrates a symmetry statistic by flipping each draw's sign independently
// with probability 1/2 per replicate. Two-sided: a replicate counts when
// |T_b| >= |T_obs|. Replicate b draws its flips from stream id
// (base id + b), so results do not depend on evaluation order.
//
// Degenerate all-zero draws make the signed-rank statistic undefined; that
// case reports statistic 0 with p = 1 (every replicate ties the observation).
inline TestReport sign_flip_test(const SDraws& s, const SymmetrySelector& selector,
                                 std::uint64_t replicates, RngStream stream,
                                 double alpha) {
  if (s.values.empty()) raise(ErrorCode::EmptyDraws, "no draws to test");
  detail::check_calibration_args(replicates, alpha);

  TestReport report;
  report.test_name = test_name(selector.kind);
  report.replicates = replicates;
  report.seed = stream.seed();
  report.alpha = alpha;

  const bool all_zero = std::all_of(s.values.begin(), s.values.end(),
                                    [](double v) { return v == 0.0; });
  if (all_zero && selector.kind == TestStat::Wilcoxon) {
    report.statistic = 0.0;
    report.p_value = 1.0;
    report.reject = false;
    return report;
  }

  const double observed = selector(s.values);
  const double observed_abs = std::abs(observed);

  std::uint64_t exceedances = 0;
  std::vector<double> flipped(s.values.size());
  for (std::uint64_t b = 1; b <= replicates; ++b) {
    RngStream rep = derive_stream(stream.seed(), stream.stream_id() + b);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      flipped[i] = rep.next_bit() ? -s.values[i] : s.values[i];
    }
    if (std::abs(selector(flipped)) >= observed_abs) ++exceedances;
  }

  report.statistic = observed;
  report.p_value = detail::add_one_p(exceedances, replicates);
  report.reject = report.p_value <= alpha;
  return report;
}

// Calibrates the energy statistic by pooling the observations and re-splitting
// them into sizes (n, m) uniformly at random per replicate. Right-tailed:
// the statistic is nonnegative, so a replicate counts when T_b >= T_obs.
// Replicate b uses stream id (base id + b); replicates run in parallel into
// per-replicate slots, so the p-value is identical for any worker count.
inline TestReport label_permutation_test(const Dataset& x, const Dataset& y,
                                         const KernelSpec& spec,
                                         std::uint64_t replicates,
                                         RngStream stream, double alpha) {
  spec.validate();
  validate_pair(x, y);
  detail::check_calibration_args(replicates, alpha);

  const std::size_t n = x.rows();
  const std::size_t m = y.rows();
  const std::size_t total = n + m;

  Dataset pool(total, x.dim());
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(x.row(i).data(), x.dim(), &pool.at(i, 0));
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::copy_n(y.row(j).data(), y.dim(), &pool.at(n + j, 0));
  }
  const PairwiseMatrix kernel_matrix = pairwise(pool, pool, spec);

  struct Scratch {
    std::vector<std::uint32_t> perm;
    std::vector<double> between, within_x, within_y;
  };

  const auto evaluate_split = [&](std::span<const std::uint32_t> indices,
                                  Scratch& scratch) {
    scratch.between.clear();
    scratch.within_x.clear();
    scratch.within_y.clear();
    for (std::size_t a = 0; a < n; ++a) {
      const std::uint32_t ia = indices[a];
      for (std::size_t b = 0; b < m; ++b) {
        scratch.between.push_back(kernel_matrix.at(ia, indices[n + b]));
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      const std::uint32_t ia = indices[a];
      for (std::size_t b = a + 1; b < n; ++b) {
        const double v = kernel_matrix.at(ia, indices[b]);
        scratch.within_x.push_back(v);
        scratch.within_x.push_back(v);
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      const std::uint32_t ia = indices[n + a];
      for (std::size_t b = a + 1; b < m; ++b) {
        const double v = kernel_matrix.at(ia, indices[n + b]);
        scratch.within_y.push_back(v);
        scratch.within_y.push_back(v);
      }
    }
    return detail::energy_from_buffers(scratch.between, scratch.within_x,
                                       scratch.within_y, n, m);
  };

  std::vector<std::uint32_t> identity(total);
  for (std::uint32_t i = 0; i < total; ++i) identity[i] = i;

  const std::size_t slots = parallel_scratch_slots(static_cast<std::size_t>(replicates));
  std::vector<Scratch> scratch(slots);
  for (auto& s : scratch) {
    s.perm = identity;
    s.between.reserve(n * m);
    s.within_x.reserve(n * (n - 1));
    s.within_y.reserve(m * (m - 1));
  }

  const double observed = evaluate_split(identity, scratch[0]);

  std::vector<std::uint8_t> exceeded(replicates, 0);
  parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t b, std::size_t w) {
    Scratch& local = scratch[w];
    RngStream rep = derive_stream(stream.seed(), stream.stream_id() + b + 1);
    local.perm = identity;
    rep.shuffle(local.perm);
    exceeded[b] = evaluate_split(local.perm, local) >= observed ? 1 : 0;
  });

  std::uint64_t exceedances = 0;
  for (const std::uint8_t e : exceeded) exceedances += e;

  TestReport report;
  report.test_name = test_name(TestStat::Energy);
  report.statistic = observed;
  report.p_value = detail::add_one_p(exceedances, replicates);
  report.replicates = replicates;
  report.seed = stream.seed();
  report.alpha = alpha;
  report.reject = report.p_value <= alpha;
  return report;
}

}  // namespace symtest
