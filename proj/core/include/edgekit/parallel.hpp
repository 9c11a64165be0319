#pragma once

#include <cstddef>
#include <functional>

namespace edgekit {

/// Worker threads to use: hardware concurrency, capped by EDGEKIT_THREADS.
std::size_t worker_count();

/// Calls body(i) for every i in [0, count) on up to `threads` workers.
/// Indices are handed out in small chunks; body must only write state owned
/// by index i. The first exception thrown by any worker stops the remaining
/// work and is rethrown here.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = worker_count());

} // namespace edgekit
