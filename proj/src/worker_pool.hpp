#pragma once
// Fixed-size work units claimed from an atomic counter. Callers index
// results by unit and merge ascending, so output never depends on the
// thread count or scheduling order.
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace frobangle {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

template <class Fn>
void run_units(std::uint64_t n_units, int threads, Fn fn) {
  threads = resolve_threads(threads);
  if (static_cast<std::uint64_t>(threads) > n_units) threads = n_units ? static_cast<int>(n_units) : 1;
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < n_units; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= n_units || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace frobangle
