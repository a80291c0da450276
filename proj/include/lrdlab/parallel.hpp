#pragma once

#include <cstddef>
#include <functional>

namespace lrdlab {

/// Worker count: LRD_LAB_THREADS if set to a positive integer, else the hardware concurrency.
[[nodiscard]] std::size_t thread_budget();

/// Runs body(i) for i in [0, count) on up to thread_budget() threads. Each index
/// runs exactly once; the first exception is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lrdlab
