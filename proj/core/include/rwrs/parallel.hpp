// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace rwrs {

/// 0 means one worker per hardware thread.
inline unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Evaluates fn(state, i) for i in [0, count) on a pool of workers pulling
/// indices from a shared counter. Each worker owns one state made by
/// make_state(). Results are stored by index, so the output does not depend
/// on scheduling or worker count as long as fn(state, i) depends only on i.
template <class MakeState, class Fn>
auto parallel_map(std::size_t count, unsigned workers, MakeState make_state, Fn fn) {
  using State = std::invoke_result_t<MakeState>;
  using Result = std::invoke_result_t<Fn, State&, std::size_t>;
  std::vector<Result> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    try {
      State state = make_state();
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) break;
        results[i] = fn(state, i);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(count);
    }
  };

  const unsigned n = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

/// Stateless convenience overload.
template <class Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn fn) {
  struct Empty {};
  return parallel_map(count, workers, [] { return Empty{}; },
                      [&fn](Empty&, std::size_t i) { return fn(i); });
}

}  // namespace rwrs
