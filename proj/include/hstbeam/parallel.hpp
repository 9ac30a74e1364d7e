// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hstbeam::detail {

/// Run fn(i) for i in [0, count) on up to `workers` threads (0 = hardware
/// concurrency). Contiguous index ranges per worker; callers write results
/// by index, so assembly order is independent of scheduling. The first
/// exception thrown by any worker is rethrown on the calling thread.
inline void parallel_for_index(std::size_t count, const std::function<void(std::size_t)> &fn,
                               unsigned workers = 0) {
  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
  }
  if (count == 0) return;
  if (workers == 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (workers > count) workers = static_cast<unsigned>(count);

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = begin + chunk < count ? begin + chunk : count;
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto &t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hstbeam::detail
