#ifndef CITENET_SRC_PARALLEL_HPP
#define CITENET_SRC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace citenet::detail {

inline unsigned worker_count(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for every i in [begin, end) across `threads` workers. The
/// first exception thrown by any call is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                  Fn&& fn) {
  if (begin >= end) return;
  const std::size_t workers = std::min<std::size_t>(threads, end - begin);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{begin};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        try {
          for (std::size_t i; !failed && (i = next++) < end;) fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          failed = true;
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace citenet::detail

#endif  // CITENET_SRC_PARALLEL_HPP
