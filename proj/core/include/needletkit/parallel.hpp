#pragma once

#include <cstddef>
#include <functional>

namespace needletkit {

/// Worker count: hardware concurrency capped by the NEEDLET_THREADS
/// environment variable (values < 1 mean single-threaded).
int worker_count();

/// Run fn(i) for i in [0, n) on up to worker_count() threads.
/// fn must not touch shared mutable state across indices.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace needletkit
