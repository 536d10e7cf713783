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
#include <cstdint>
#include <numbers>
#include <vector>

namespace symtest {

// SplitMix64 finalizer (Steele/Lea/Flood; fixed-increment variant by Vigna).
// Bijective on uint64_t.
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic random stream keyed by (seed, stream_id).
//
// Algorithm (version-pinned, integer-only, platform-independent):
//   state0 = mix(mix(seed ^ GAMMA) + stream_id)
//   output = mix(state += GAMMA)            with GAMMA = 0x9E3779B97F4A7C15
// where mix is the SplitMix64 finalizer above. For a fixed seed the map
// stream_id -> state0 is injective, so distinct stream ids start at distinct,
// well-scrambled positions of the SplitMix64 orbit; windows of desk-scale
// length collide with negligible probability.
class RngStream {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed),
        stream_id_(stream_id),
        state_(splitmix64_mix(splitmix64_mix(seed ^ kGamma) + stream_id)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept { return splitmix64_mix(state_ += kGamma); }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double next_double_pos() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Fair bit.
  std::uint32_t next_bit() noexcept {
    return static_cast<std::uint32_t>(next_u64() >> 63);
  }

  // Unbiased integer in [0, n); n must be positive. Lemire's multiply-shift
  // rejection method.
  std::uint64_t next_below(std::uint64_t n) noexcept {
    unsigned __int128 product =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
    auto low = static_cast<std::uint64_t>(product);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(next_u64()) *
                  static_cast<unsigned __int128>(n);
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms per draw.
  double next_normal() noexcept {
    const double u1 = next_double_pos();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
};

inline RngStream derive_stream(std::uint64_t seed, std::uint64_t stream_id) {
  return RngStream(seed, stream_id);
}

}  // namespace symtest
