#pragma once

#include <cstdint>
#include <functional>

namespace dlbench {

/// Worker count: the DLBENCH_THREADS environment variable when set (>= 1),
/// otherwise the hardware concurrency.
int thread_count();

/// Runs body(0..count-1) on a small thread pool. Callers keep determinism by
/// giving each index its own RngStream and writing to index-addressed slots.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body,
                  int threads = 0);

} // namespace dlbench
