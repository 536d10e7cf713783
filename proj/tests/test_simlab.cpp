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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "support/test_support.hpp"
#include "symtest/simlab.hpp"

using symtest::GeneratorSpec;
using symtest::KernelSpec;
using symtest::Scenario;
using symtest::StudyReport;
using symtest::TestStat;
using symtest::derive_stream;

namespace {

Scenario small_null_scenario() {
  Scenario sc;
  sc.name = "null-smoke";
  sc.generator_x = GeneratorSpec::gaussian({0.0, 0.0}, 1.0);
  sc.generator_y = GeneratorSpec::gaussian({0.0, 0.0}, 1.0);
  sc.n = 24;
  sc.m = 24;
  sc.dim = 2;
  sc.kernel = KernelSpec::euclidean();
  sc.tests = {TestStat::SignCf, TestStat::Wilcoxon, TestStat::HFunc, TestStat::KsFg,
              TestStat::Energy};
  sc.permutations = 59;
  sc.trials = 60;
  sc.alpha = 0.05;
  sc.seed = 404;
  return sc;
}

bool reports_identical(const StudyReport& a, const StudyReport& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& ra = a.rows[i];
    const auto& rb = b.rows[i];
    if (ra.scenario != rb.scenario || ra.test != rb.test || ra.trials != rb.trials ||
        ra.rejections != rb.rejections || ra.rejection_rate != rb.rejection_rate ||
        ra.mc_stderr != rb.mc_stderr || ra.mean_statistic != rb.mean_statistic) {
      return false;
    }
  }
  return true;
}

struct ThreadsGuard {
  explicit ThreadsGuard(const char* value) { setenv("SYMTEST_THREADS", value, 1); }
  ~ThreadsGuard() { unsetenv("SYMTEST_THREADS"); }
};

}  // namespace

TEST_CASE("generators produce the requested shape", "[simlab]") {
  auto stream = derive_stream(200, 0);
  const auto g = symtest::generate(GeneratorSpec::gaussian({1.0, -2.0, 0.0}, 0.5), 40, 3, stream);
  CHECK(g.rows() == 40);
  CHECK(g.dim() == 3);
  g.validate();

  const auto u = symtest::generate(GeneratorSpec::uniform_cube(-1.0, 2.0), 500, 2, stream);
  for (std::size_t r = 0; r < u.rows(); ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      CHECK(u.at(r, c) >= -1.0);
      CHECK(u.at(r, c) < 2.0);
    }
  }

  const auto mix = symtest::generate(GeneratorSpec::gaussian_mixture(8.0), 400, 2, stream);
  std::size_t shifted = 0;
  for (std::size_t r = 0; r < mix.rows(); ++r) shifted += mix.at(r, 0) > 4.0 ? 1 : 0;
  CHECK(shifted > 120);
  CHECK(shifted < 280);
}

TEST_CASE("generator validation is strict", "[simlab]") {
  auto stream = derive_stream(200, 1);
  CHECK_THROWS_AS(symtest::generate(GeneratorSpec::gaussian({0.0}, 1.0), 5, 2, stream),
                  symtest::Error);
  CHECK_THROWS_AS(symtest::generate(GeneratorSpec::gaussian({0.0, 0.0}, 0.0), 5, 2, stream),
                  symtest::Error);
  CHECK_THROWS_AS(symtest::generate(GeneratorSpec::uniform_cube(1.0, 1.0), 5, 2, stream),
                  symtest::Error);
}

TEST_CASE("scenario validation rejects degenerate settings", "[simlab]") {
  Scenario sc = small_null_scenario();
  sc.trials = 0;
  CHECK_THROWS_AS(sc.validate(), symtest::Error);
  sc = small_null_scenario();
  sc.alpha = 1.0;
  CHECK_THROWS_AS(sc.validate(), symtest::Error);
  sc = small_null_scenario();
  sc.tests.clear();
  CHECK_THROWS_AS(sc.validate(), symtest::Error);
  sc = small_null_scenario();
  sc.n = 1;  // S-based tests need two observations per sample
  CHECK_THROWS_AS(sc.validate(), symtest::Error);
}

TEST_CASE("study replay is exact and thread-count invariant", "[simlab]") {
  Scenario sc = small_null_scenario();
  sc.trials = 20;

  StudyReport first, second, threaded;
  {
    ThreadsGuard guard("1");
    first = symtest::run_study(sc);
    second = symtest::run_study(sc);
  }
  {
    ThreadsGuard guard("3");
    threaded = symtest::run_study(sc);
  }
  CHECK(reports_identical(first, second));
  CHECK(reports_identical(first, threaded));
  REQUIRE(first.rows.size() == 5);
}

TEST_CASE("single trial yields a degenerate rate", "[simlab]") {
  Scenario sc = small_null_scenario();
  sc.trials = 1;
  const StudyReport report = symtest::run_study(sc);
  for (const auto& row : report.rows) {
    CHECK((row.rejection_rate == 0.0 || row.rejection_rate == 1.0));
    CHECK(row.mc_stderr == 0.0);
    CHECK(row.trials == 1);
  }
}

TEST_CASE("null smoke study keeps rejection rates plausible", "[simlab]") {
  const StudyReport report = symtest::run_study(small_null_scenario());
  for (const auto& row : report.rows) {
    INFO(row.test);
    CHECK(row.rejection_rate <= 0.20);  // 60 trials; just a sanity corridor
    CHECK(row.mc_stderr <= 0.07);
  }
}

TEST_CASE("rejection rates are nondecreasing along a shift family", "[simlab]") {
  const double shifts[] = {0.0, 0.5, 1.0, 1.5};
  std::vector<StudyReport> reports;
  for (const double shift : shifts) {
    Scenario sc = small_null_scenario();
    sc.name = "shift-" + std::to_string(shift);
    sc.generator_y = GeneratorSpec::gaussian({shift, 0.0}, 1.0);
    sc.n = 40;
    sc.m = 40;
    sc.tests = {TestStat::Energy, TestStat::Wilcoxon};
    sc.trials = 100;
    sc.permutations = 79;
    sc.seed = 512;
    reports.push_back(symtest::run_study(sc));
  }
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i + 1 < reports.size(); ++i) {
      const auto& lo = reports[i].rows[k];
      const auto& hi = reports[i + 1].rows[k];
      INFO(lo.test << " shift step " << i);
      // Nondecreasing within two standard errors of the difference.
      CHECK(hi.rejection_rate >= lo.rejection_rate - 2.0 * (lo.mc_stderr + hi.mc_stderr));
    }
  }
  // The energy test must actually climb by the largest shift.
  CHECK(reports.back().rows[0].rejection_rate > reports.front().rows[0].rejection_rate);
}

TEST_CASE("energy test picks up a gross shift", "[simlab]") {
  Scenario sc = small_null_scenario();
  sc.name = "shift-smoke";
  sc.generator_y = GeneratorSpec::gaussian({2.5, 0.0}, 1.0);
  sc.tests = {TestStat::Energy};
  sc.trials = 30;
  sc.permutations = 99;
  const StudyReport report = symtest::run_study(sc);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].rejection_rate >= 0.8);
}
