#pragma once

#include <cstddef>
#include <functional>

namespace certiposi {

/// Worker count: CERTIPOSI_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/**
 * Calls body(i) for i in [0, count) split into contiguous blocks across
 * threads. Bodies must only write to per-index state, so any later reduction
 * in index order is independent of scheduling. The first exception thrown by
 * a worker is rethrown on the calling thread.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace certiposi
