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
#include <vector>

#include "support/test_support.hpp"
#include "symtest/kernels.hpp"
#include "symtest/rng.hpp"

using Catch::Matchers::WithinAbs;
using symtest::Dataset;
using symtest::Error;
using symtest::ErrorCode;
using symtest::KernelSpec;

namespace {
std::vector<double> point(std::initializer_list<double> coords) { return coords; }
}  // namespace

TEST_CASE("euclidean distance basics", "[kernels]") {
  CHECK(symtest::distance(point({0, 0}), point({3, 4})) == 5.0);
  CHECK(symtest::distance(point({7, -2}), point({7, -2})) == 0.0);
  CHECK(symtest::distance(point({2}), point({-1})) == 3.0);
}

TEST_CASE("distance rejects mixed dimensions", "[kernels]") {
  try {
    symtest::distance(point({1, 2}), point({1, 2, 3}));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("gaussian kernel closed forms", "[kernels]") {
  CHECK(symtest::snd_kernel(point({1, 1}), point({1, 1})) == 0.0);
  // ||a-b||^2 = 2 ln 2 gives exactly 1/2.
  CHECK_THAT(symtest::snd_kernel(point({0}), point({std::sqrt(2.0 * std::log(2.0))})),
             WithinAbs(0.5, 1e-15));
  CHECK_THAT(symtest::snd_kernel(point({0}), point({1})),
             WithinAbs(1.0 - std::exp(-0.5), 1e-15));
}

TEST_CASE("gaussian kernel scale must be positive", "[kernels]") {
  try {
    symtest::snd_kernel(point({0}), point({1}), 0.0);
    FAIL("expected NonPositiveScale");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveScale);
  }
  CHECK_THROWS_AS(KernelSpec::gaussian(-1.0).validate(), Error);
}

TEST_CASE("kernel symmetry and euclidean triangle inequality", "[kernels]") {
  auto stream = symtest::derive_stream(100, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t dim = 1 + stream.next_below(4);
    std::vector<double> a(dim), b(dim), c(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      a[k] = 4.0 * stream.next_double() - 2.0;
      b[k] = 4.0 * stream.next_double() - 2.0;
      c[k] = 4.0 * stream.next_double() - 2.0;
    }
    CHECK(symtest::distance(a, b) == symtest::distance(b, a));
    CHECK(symtest::snd_kernel(a, b, 0.7) == symtest::snd_kernel(b, a, 0.7));
    CHECK(symtest::distance(a, c) <=
          symtest::distance(a, b) + symtest::distance(b, c) + 1e-12);
  }
}

TEST_CASE("gaussian kernel increases with distance and stays in [0, 1)", "[kernels]") {
  // Past ~6 sigma the kernel saturates to 1.0 in double precision, so the
  // strict bound is only checkable where the complement is representable.
  const std::vector<double> origin{0.0};
  double previous = -1.0;
  for (double r = 0.0; r < 7.0; r += 0.25) {
    const double v = symtest::snd_kernel(origin, point({r}), 1.3);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("pairwise matches the scalar kernel entrywise", "[kernels]") {
  const Dataset one = Dataset::from_rows({{1.0, 2.0}});
  const auto solo = symtest::pairwise(one, one, KernelSpec::euclidean());
  REQUIRE(solo.rows() == 1);
  REQUIRE(solo.cols() == 1);
  CHECK(solo.at(0, 0) == 0.0);

  const Dataset x0 = Dataset::from_rows({{0.0, 0.0}});
  const Dataset y0 = Dataset::from_rows({{3.0, 4.0}});
  CHECK(symtest::pairwise(x0, y0, KernelSpec::euclidean()).at(0, 0) == 5.0);

  auto stream = symtest::derive_stream(100, 1);
  for (const auto spec : {KernelSpec::euclidean(), KernelSpec::gaussian(0.8)}) {
    const Dataset x = symtest::testing::random_dataset(2, 3, stream, 2.0);
    const Dataset y = symtest::testing::random_dataset(3, 3, stream, 2.0);
    const auto matrix = symtest::pairwise(x, y, spec);
    REQUIRE(matrix.rows() == 2);
    REQUIRE(matrix.cols() == 3);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(matrix.at(i, j) == symtest::kernel_value(x.row(i), y.row(j), spec));
      }
    }
  }
}

TEST_CASE("self pairwise is symmetric with zero diagonal", "[kernels]") {
  auto stream = symtest::derive_stream(100, 2);
  const Dataset x = symtest::testing::random_dataset(6, 2, stream, 3.0);
  const auto matrix = symtest::pairwise(x, x, KernelSpec::gaussian());
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(matrix.at(i, i) == 0.0);
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(matrix.at(i, j) == matrix.at(j, i));
      CHECK(matrix.at(i, j) >= 0.0);
    }
  }
}
