#pragma once

#include <cstddef>
#include <functional>

namespace nonlocal {

/// Worker threads used by the library: NONLOCAL_THREADS if set to a positive
/// integer, otherwise std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) over worker_count() threads in contiguous
/// chunks. The first exception thrown by any worker is rethrown here.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nonlocal
