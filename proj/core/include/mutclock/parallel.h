#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace mutclock {

// Calls fn(i) for every i in [0, n) on up to `workers` threads.  Indices are
// handed out dynamically, so fn must only write to per-index state.  The first
// exception thrown stops further work and is rethrown here.
template <class Fn>
auto parallel_for(std::size_t n, int workers, Fn&& fn) -> void {
  auto next = std::atomic<std::size_t>{0};
  auto failure = std::exception_ptr{};
  auto failed = std::atomic<bool>{false};
  auto work = [&] {
    try {
      for (auto i = next.fetch_add(1); i < n && !failed; i = next.fetch_add(1)) { fn(i); }
    } catch (...) {
      if (!failed.exchange(true)) { failure = std::current_exception(); }
    }
  };
  auto n_threads = std::min(static_cast<std::size_t>(std::clamp(workers, 1, 1024)), std::max<std::size_t>(n, 1));
  if (n_threads == 1) {
    work();
  } else {
    auto pool = std::vector<std::jthread>{};
    for (auto t = std::size_t{0}; t != n_threads; ++t) { pool.emplace_back(work); }
  }
  if (failure) { std::rethrow_exception(failure); }
}

}  // namespace mutclock
