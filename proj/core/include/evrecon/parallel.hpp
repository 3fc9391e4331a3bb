// Copyright 2026 The evrecon Authors
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

#ifndef EVRECON_PARALLEL_HPP
#define EVRECON_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace evrecon
{
/// Lane count to use when the caller asks for 0 ("all available").
inline unsigned resolve_lanes(unsigned requested)
{
  if (requested > 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(lane, begin, end) over [0, n) in blocks of \p block items. Blocks
/// are handed out dynamically, so callers must not let results depend on which
/// lane processed a block. The first exception thrown by any lane is rethrown.
template <typename Fn>
void parallel_blocks(std::size_t n, std::size_t block, unsigned lanes, Fn && fn)
{
  if (n == 0) {
    return;
  }
  block = std::max<std::size_t>(1, block);
  const std::size_t n_blocks = (n + block - 1) / block;
  lanes = static_cast<unsigned>(std::min<std::size_t>(resolve_lanes(lanes), n_blocks));
  if (lanes == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) {
      fn(0u, b * block, std::min(n, (b + 1) * block));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](unsigned lane) {
    try {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks || failed.load()) {
          return;
        }
        fn(lane, b * block, std::min(n, (b + 1) * block));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) {
        error = std::current_exception();
      }
      failed = true;
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(lanes);
    for (unsigned lane = 0; lane < lanes; ++lane) {
      threads.emplace_back(worker, lane);
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace evrecon

#endif  // EVRECON_PARALLEL_HPP
