#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace uavcpn::detail {

// Runs body(i) for i in [0, n) on up to `jobs` threads. Work is handed out in
// chunks; results must be written to per-index slots by the caller. The first
// exception thrown by any body is rethrown here.
template <class Body>
void parallel_for(std::uint64_t n, unsigned jobs, Body&& body) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n < 2) {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::uint64_t chunk = std::max<std::uint64_t>(1, n / (8ull * jobs));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(jobs, n));
  for (unsigned w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      try {
        for (;;) {
          const std::uint64_t begin = next.fetch_add(chunk);
          if (begin >= n) return;
          const std::uint64_t end = std::min(n, begin + chunk);
          for (std::uint64_t i = begin; i < end; ++i) body(i);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    });
  }
  workers.clear();  // join
  if (failure) std::rethrow_exception(failure);
}

}  // namespace uavcpn::detail
