#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace alexlab {

/// Worker count from ALEXLAB_THREADS, or 1 when unset or malformed.
inline int threads_from_env() {
  const char* s = std::getenv("ALEXLAB_THREADS");
  if (s == nullptr) return 1;
  try {
    const int n = std::stoi(s);
    return n > 0 ? n : 1;
  } catch (const std::exception&) {
    return 1;
  }
}

/// Runs body(i) for i in [0, count) on `threads` workers. Each index is
/// handled exactly once, so writing results into slot i keeps the output
/// order deterministic. The first exception thrown is rethrown.
template <class F>
void parallel_for(int count, int threads, F&& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace alexlab
