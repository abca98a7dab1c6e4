#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stellar::detail {

// Splits [0, count) into `workers` contiguous ranges and calls
// body(worker, lo, hi) for each, on its own thread when workers > 1.
// The first exception thrown by any worker is rethrown after joining.
template <typename Body>
void run_partitioned(std::uint64_t count, unsigned workers, Body&& body) {
  workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, count)));
  if (workers == 1) {
    body(0u, std::uint64_t{0}, count);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = count * w / workers;
    const std::uint64_t hi = count * (w + 1) / workers;
    threads.emplace_back([&, w, lo, hi] {
      try {
        body(w, lo, hi);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace stellar::detail
