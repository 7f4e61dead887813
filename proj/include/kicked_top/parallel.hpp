#pragma once

#include <cstddef>
#include <functional>

namespace kt {

/// Worker count from KICKED_TOP_THREADS, else the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on a worker pool. If any call throws, the
/// exception from the lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kt
