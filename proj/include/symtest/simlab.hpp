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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symtest/construct.hpp"
#include "symtest/dataset.hpp"
#include "symtest/errors.hpp"
#include "symtest/kernels.hpp"
#include "symtest/parallel.hpp"
#include "symtest/permutation.hpp"
#include "symtest/rng.hpp"
#include "symtest/statistics.hpp"

namespace symtest {

// Synthetic sample generator. Every field a kind uses must be set explicitly;
// validation rejects anything underspecified.
struct GeneratorSpec {
  enum class Kind {
    Gaussian,         // N(mean, (scale^2) I); mean has length dim
    UniformCube,      // coordinates i.i.d. uniform on [lo, hi]
    GaussianMixture,  // (1/2) N(0, I) + (1/2) N(shift * e1, I)
  };

  Kind kind = Kind::Gaussian;
  std::vector<double> mean;
  double scale = 0.0;
  double lo = 0.0, hi = 0.0;
  double shift = 0.0;

  static GeneratorSpec gaussian(std::vector<double> mean, double scale) {
    GeneratorSpec g;
    g.kind = Kind::Gaussian;
    g.mean = std::move(mean);
    g.scale = scale;
    return g;
  }
  static GeneratorSpec uniform_cube(double lo, double hi) {
    GeneratorSpec g;
    g.kind = Kind::UniformCube;
    g.lo = lo;
    g.hi = hi;
    return g;
  }
  static GeneratorSpec gaussian_mixture(double shift) {
    GeneratorSpec g;
    g.kind = Kind::GaussianMixture;
    g.shift = shift;
    return g;
  }

  const char* name() const {
    switch (kind) {
      case Kind::Gaussian: return "gaussian";
      case Kind::UniformCube: return "uniform-cube";
      case Kind::GaussianMixture: return "gaussian-mixture";
    }
    return "?";
  }

  void validate(std::size_t dim) const {
    switch (kind) {
      case Kind::Gaussian:
        if (mean.size() != dim) {
          raise(ErrorCode::InvalidScenario,
                "gaussian mean has length " + std::to_string(mean.size()) +
                    ", expected " + std::to_string(dim));
        }
        if (!(scale > 0.0)) {
          raise(ErrorCode::InvalidScenario, "gaussian scale must be positive");
        }
        for (const double c : mean) {
          if (!std::isfinite(c)) raise(ErrorCode::InvalidScenario, "gaussian mean not finite");
        }
        break;
      case Kind::UniformCube:
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
          raise(ErrorCode::InvalidScenario, "uniform cube needs finite lo < hi");
        }
        break;
      case Kind::GaussianMixture:
        if (!std::isfinite(shift)) {
          raise(ErrorCode::InvalidScenario, "gaussian mixture shift not finite");
        }
        break;
    }
  }
};

inline Dataset generate(const GeneratorSpec& gen, std::size_t rows, std::size_t dim,
                        RngStream& stream) {
  gen.validate(dim);
  Dataset out(rows, dim);
  switch (gen.kind) {
    case GeneratorSpec::Kind::Gaussian:
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
          out.at(r, c) = gen.mean[c] + gen.scale * stream.next_normal();
        }
      }
      break;
    case GeneratorSpec::Kind::UniformCube:
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
          out.at(r, c) = gen.lo + (gen.hi - gen.lo) * stream.next_double();
        }
      }
      break;
    case GeneratorSpec::Kind::GaussianMixture:
      for (std::size_t r = 0; r < rows; ++r) {
        const bool shifted = stream.next_bit() != 0;
        for (std::size_t c = 0; c < dim; ++c) {
          out.at(r, c) = stream.next_normal();
        }
        if (shifted) out.at(r, 0) += gen.shift;
      }
      break;
  }
  return out;
}

// One Monte Carlo study cell: generators, sizes, kernel, test menu, and the
// calibration parameters, all explicit.
struct Scenario {
  std::string name;
  GeneratorSpec generator_x, generator_y;
  std::size_t n = 0, m = 0, dim = 0;
  KernelSpec kernel;
  std::vector<TestStat> tests;
  HSpec h = HSpec::power(2.0);
  std::uint64_t permutations = 0;  // B
  std::uint64_t trials = 0;
  double alpha = 0.05;
  std::uint64_t seed = 0;

  bool wants_s_tests() const {
    for (const TestStat t : tests) {
      if (t != TestStat::Energy) return true;
    }
    return false;
  }

  void validate() const {
    if (name.empty()) raise(ErrorCode::InvalidScenario, "scenario needs a name");
    if (dim < 1) raise(ErrorCode::InvalidScenario, "dim must be >= 1");
    if (trials < 1) raise(ErrorCode::InvalidScenario, "trials must be >= 1");
    if (permutations < 1) raise(ErrorCode::InvalidScenario, "permutations must be >= 1");
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
      raise(ErrorCode::InvalidScenario, "alpha must lie in (0, 1)");
    }
    if (tests.empty()) raise(ErrorCode::InvalidScenario, "scenario selects no tests");
    const std::size_t min_rows = wants_s_tests() ? 2 : 1;
    if (n < min_rows || m < min_rows) {
      raise(ErrorCode::InvalidScenario, "sample sizes too small for the selected tests");
    }
    kernel.validate();
    h.validate();
    generator_x.validate(dim);
    generator_y.validate(dim);
  }
};

// Per (scenario, test) aggregate over the trials.
struct StudyRow {
  std::string scenario;
  std::string test;
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  double rejection_rate = 0.0;
  double mc_stderr = 0.0;  // sqrt(r (1 - r) / trials)
  double mean_statistic = 0.0;
  double wall_time_sec = 0.0;  // shared across the scenario's rows
};

struct StudyReport {
  std::vector<StudyRow> rows;
};

namespace detail {

// Stream-id layout per trial: ids are carved out of a 2^32-wide window at
// trial * 2^32, with x at +0, y at +1, the S sample at +2, and test k's
// calibration base at +3 + k * (B + 1). Trials are therefore independent
// tasks and can run in any order or thread count.
inline constexpr std::uint64_t kTrialStride = 1ULL << 32;

struct TrialOutcome {
  std::uint8_t reject = 0;
  double statistic = 0.0;
};

}  // namespace detail

inline StudyReport run_study(const Scenario& scenario) {
  scenario.validate();
  const auto started = std::chrono::steady_clock::now();

  const std::size_t num_tests = scenario.tests.size();
  const std::uint64_t trials = scenario.trials;
  const std::uint64_t B = scenario.permutations;

  std::vector<detail::TrialOutcome> outcomes(trials * num_tests);

  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial, std::size_t) {
    const std::uint64_t base = static_cast<std::uint64_t>(trial) * detail::kTrialStride;
    RngStream stream_x = derive_stream(scenario.seed, base + 0);
    RngStream stream_y = derive_stream(scenario.seed, base + 1);
    const Dataset x = generate(scenario.generator_x, scenario.n, scenario.dim, stream_x);
    const Dataset y = generate(scenario.generator_y, scenario.m, scenario.dim, stream_y);

    SDraws s;
    if (scenario.wants_s_tests()) {
      s = build_s_sample(x, y, scenario.kernel, derive_stream(scenario.seed, base + 2));
    }

    for (std::size_t k = 0; k < num_tests; ++k) {
      const TestStat test = scenario.tests[k];
      const std::uint64_t calibration_base =
          base + 3 + static_cast<std::uint64_t>(test_index(test)) * (B + 1);
      TestReport report;
      if (test == TestStat::Energy) {
        report = label_permutation_test(x, y, scenario.kernel, B,
                                        derive_stream(scenario.seed, calibration_base),
                                        scenario.alpha);
      } else {
        report = sign_flip_test(s, SymmetrySelector{test, scenario.h}, B,
                                derive_stream(scenario.seed, calibration_base),
                                scenario.alpha);
      }
      outcomes[trial * num_tests + k] = {report.reject ? std::uint8_t{1} : std::uint8_t{0},
                                         report.statistic};
    }
  });

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                    started).count();

  StudyReport report;
  report.rows.reserve(num_tests);
  for (std::size_t k = 0; k < num_tests; ++k) {
    StudyRow row;
    row.scenario = scenario.name;
    row.test = test_name(scenario.tests[k]);
    row.trials = trials;
    double stat_sum = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const auto& outcome = outcomes[t * num_tests + k];
      row.rejections += outcome.reject;
      stat_sum += outcome.statistic;
    }
    row.rejection_rate = static_cast<double>(row.rejections) / static_cast<double>(trials);
    row.mc_stderr = std::sqrt(row.rejection_rate * (1.0 - row.rejection_rate) /
                              static_cast<double>(trials));
    row.mean_statistic = stat_sum / static_cast<double>(trials);
    row.wall_time_sec = wall;
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline StudyReport run_study(std::span<const Scenario> scenarios) {
  StudyReport combined;
  for (const Scenario& scenario : scenarios) {
    StudyReport one = run_study(scenario);
    for (auto& row : one.rows) combined.rows.push_back(std::move(row));
  }
  return combined;
}

}  // namespace symtest
