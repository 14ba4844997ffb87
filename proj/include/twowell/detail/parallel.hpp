#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace twowell::detail {

// Runs fn(i) for i in [0, count) over `threads` workers (0 = hardware
// concurrency).  Work is striped by index; callers write results into
// preallocated slots so output ordering never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  unsigned n_workers = threads > 0 ? unsigned(threads)
                                   : std::thread::hardware_concurrency();
  if (n_workers < 1) n_workers = 1;
  if (n_workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&](unsigned offset) {
    try {
      for (std::size_t i = offset; i < count; i += n_workers) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker, w);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace twowell::detail
