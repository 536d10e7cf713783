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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symtest/dataset.hpp"
#include "symtest/errors.hpp"
#include "symtest/kernels.hpp"
#include "symtest/rng.hpp"

namespace symtest {

// One randomized comparison unit: two observations from each sample plus the
// two fair bits. The four observations must come from four distinct rows.
struct Block {
  std::span<const double> x1, x2;
  std::span<const double> y1, y2;
  bool eps = false;
  bool delta = false;
};

// Row indices and bits actually used for one block; kept as provenance so a
// pairing plan can be audited for disjointness.
struct BlockPlan {
  std::uint32_t x1, x2;
  std::uint32_t y1, y2;
  std::uint8_t eps, delta;
};

// Ordered draws of the symmetrization variable
//   S = delta * d(X, Y) - (1 - delta) * (eps * d(X, X') + (1 - eps) * d(Y, Y'))
// together with everything needed to reproduce them byte for byte.
struct SDraws {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::size_t blocks_used = 0;  // == values.size()
  KernelSpec kernel;
  std::vector<BlockPlan> plan;
};

// S for a single block. Nonnegative when delta = 1, nonpositive when delta = 0.
inline double draw_s(const Block& block, const KernelSpec& spec) {
  spec.validate();
  if (block.delta) return kernel_value(block.x1, block.y1, spec);
  const double within = block.eps ? kernel_value(block.x1, block.x2, spec)
                                  : kernel_value(block.y1, block.y2, spec);
  return -within;
}

namespace detail {

inline void check_two_rows_each(const Dataset& x, const Dataset& y) {
  validate_pair(x, y);
  if (x.rows() < 2 || y.rows() < 2) {
    raise(ErrorCode::TooFewObservations,
          "need at least 2 observations per sample, got " +
              std::to_string(x.rows()) + " and " + std::to_string(y.rows()));
  }
}

// Shuffles each sample's indices and walks them in disjoint blocks of two
// observations per sample. RNG consumption order is fixed: shuffle x, shuffle
// y, then one eps bit and one delta bit per block.
template <typename PerBlock>
inline std::vector<BlockPlan> run_blocks(const Dataset& x, const Dataset& y,
                                         RngStream& stream, PerBlock&& per_block) {
  std::vector<std::uint32_t> perm_x(x.rows());
  std::vector<std::uint32_t> perm_y(y.rows());
  for (std::uint32_t i = 0; i < perm_x.size(); ++i) perm_x[i] = i;
  for (std::uint32_t i = 0; i < perm_y.size(); ++i) perm_y[i] = i;
  stream.shuffle(perm_x);
  stream.shuffle(perm_y);

  const std::size_t blocks = std::min(x.rows(), y.rows()) / 2;
  std::vector<BlockPlan> plan;
  plan.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    BlockPlan p;
    p.x1 = perm_x[2 * b];
    p.x2 = perm_x[2 * b + 1];
    p.y1 = perm_y[2 * b];
    p.y2 = perm_y[2 * b + 1];
    p.eps = static_cast<std::uint8_t>(stream.next_bit());
    p.delta = static_cast<std::uint8_t>(stream.next_bit());
    per_block(p);
    plan.push_back(p);
  }
  return plan;
}

}  // namespace detail

// Draws m = floor(min(n_x, n_y) / 2) independent realizations of S from two
// finite samples. Each block consumes two fresh observations from either
// sample, so the draws inherit the mutual independence the construction
// needs; leftover observations are discarded, never recycled.
inline SDraws build_s_sample(const Dataset& x, const Dataset& y,
                             const KernelSpec& spec, RngStream stream) {
  spec.validate();
  detail::check_two_rows_each(x, y);

  SDraws out;
  out.seed = stream.seed();
  out.stream_id = stream.stream_id();
  out.kernel = spec;
  out.values.reserve(std::min(x.rows(), y.rows()) / 2);
  out.plan = detail::run_blocks(x, y, stream, [&](const BlockPlan& p) {
    Block block{x.row(p.x1), x.row(p.x2), y.row(p.y1), y.row(p.y2),
                p.eps != 0, p.delta != 0};
    out.values.push_back(draw_s(block, spec));
  });
  out.blocks_used = out.values.size();
  return out;
}

// Between-sample distances versus the eps-mixture of within-sample distances,
// built over the same disjoint-block scheme. The two multisets have equal law
// exactly when the two samples' distributions coincide.
struct DistanceSplit {
  std::vector<double> between;
  std::vector<double> within_mixed;
};

inline DistanceSplit split_distances(const Dataset& x, const Dataset& y,
                                     const KernelSpec& spec, RngStream stream) {
  spec.validate();
  detail::check_two_rows_each(x, y);

  DistanceSplit out;
  const std::size_t blocks = std::min(x.rows(), y.rows()) / 2;
  out.between.reserve(blocks);
  out.within_mixed.reserve(blocks);

  std::vector<std::uint32_t> perm_x(x.rows());
  std::vector<std::uint32_t> perm_y(y.rows());
  for (std::uint32_t i = 0; i < perm_x.size(); ++i) perm_x[i] = i;
  for (std::uint32_t i = 0; i < perm_y.size(); ++i) perm_y[i] = i;
  stream.shuffle(perm_x);
  stream.shuffle(perm_y);

  for (std::size_t b = 0; b < blocks; ++b) {
    const auto x1 = x.row(perm_x[2 * b]);
    const auto x2 = x.row(perm_x[2 * b + 1]);
    const auto y1 = y.row(perm_y[2 * b]);
    const auto y2 = y.row(perm_y[2 * b + 1]);
    const bool eps = stream.next_bit() != 0;
    out.between.push_back(kernel_value(x1, y1, spec));
    out.within_mixed.push_back(eps ? kernel_value(x1, x2, spec)
                                   : kernel_value(y1, y2, spec));
  }
  return out;
}

}  // namespace symtest
