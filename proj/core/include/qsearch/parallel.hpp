#pragma once

#include <cstddef>
#include <functional>

namespace qsearch {

/// Worker count from the QSEARCH_THREADS environment variable, falling
/// back to the hardware concurrency.
int default_thread_count();

/// Runs fn(i) for every i in [0, count) across the given number of
/// threads and blocks until all complete. Work items must be independent;
/// the first exception thrown by any item is rethrown.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace qsearch
