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

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace symtest {

// Worker cap: SYMTEST_THREADS if set (>=1), otherwise all hardware threads.
inline std::size_t max_workers() {
  if (const char* env = std::getenv("SYMTEST_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed >= 1) return static_cast<std::size_t>(parsed);
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {
inline bool& inside_parallel_region() {
  thread_local bool inside = false;
  return inside;
}
}  // namespace detail

// Runs fn(index, worker) for every index in [0, count). Tasks must be
// independent and write results to per-index slots only, so the outcome is
// identical for any worker count. `worker` is in [0, workers) and may be used
// to select scratch buffers. Nested calls degrade to sequential execution.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t workers =
      detail::inside_parallel_region() ? 1 : std::min(max_workers(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      detail::inside_parallel_region() = true;
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        fn(i, w);
      }
      detail::inside_parallel_region() = false;
    });
  }
  for (auto& thread : pool) thread.join();
}

// Number of scratch slots a parallel_for call site may need.
inline std::size_t parallel_scratch_slots(std::size_t count) {
  return std::max<std::size_t>(
      1, detail::inside_parallel_region() ? 1 : std::min(max_workers(), count));
}

}  // namespace symtest
