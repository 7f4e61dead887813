#include "kicked_top/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace kt {

std::size_t worker_count() {
  if (const char* env = std::getenv("KICKED_TOP_THREADS")) {
    try {
      const long requested = std::stol(env);
      if (requested > 0) return static_cast<std::size_t>(requested);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers = std::min(worker_count(), n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  auto drain = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (workers == 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace kt
