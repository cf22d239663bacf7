#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bjj {

/// Runs fn(i) for i in [0, count) on up to `workers` threads.
///
/// Indices are handed out dynamically. If any call throws, the remaining
/// work is abandoned and the exception from the LOWEST failing index is
/// rethrown, so the reported failure does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (count == 0) return;
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(count));

  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto run = [&] {
    while (!failed.load()) {
      // a claimed index always runs, so every index below a failure is evaluated
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };

  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace bjj
