#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace nlhd::detail {

inline unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Runs produce(i) for i in [0, count) on up to `threads` workers and hands
/// each result to consume(i, result) strictly in index order on the calling
/// thread. Work is processed in bounded batches so memory stays proportional
/// to the batch, not to `count`. The consume order, and therefore any
/// floating-point accumulation done there, never depends on the worker count.
template <class Produce, class Consume>
void ordered_parallel_map(std::size_t count, int threads, Produce&& produce, Consume&& consume) {
  using Result = decltype(produce(std::size_t{0}));
  const unsigned workers = resolve_threads(threads);

  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      consume(i, produce(i));
    }
    return;
  }

  const std::size_t batch = std::max<std::size_t>(64, std::size_t{workers} * 16);
  std::vector<std::optional<Result>> slots;

  for (std::size_t begin = 0; begin < count; begin += batch) {
    const std::size_t end = std::min(count, begin + batch);
    slots.clear();
    slots.resize(end - begin);

    std::atomic<std::size_t> next{begin};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= end) return;
        try {
          slots[i - begin].emplace(produce(i));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(end, std::memory_order_relaxed);
          return;
        }
      }
    };

    {
      const unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(end - begin));
      std::vector<std::jthread> pool;
      pool.reserve(n - 1);
      for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
      work();
    }

    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = begin; i < end; ++i) {
      consume(i, std::move(*slots[i - begin]));
    }
  }
}

/// Parallel for over [0, count) where each index writes only its own output.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace nlhd::detail
