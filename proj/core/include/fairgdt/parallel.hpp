#pragma once

#include <cstddef>
#include <functional>

namespace fairgdt {

/// Worker-thread cap: FAIRGDT_THREADS when set (>= 1), otherwise hardware
/// concurrency.
unsigned max_threads();

/// Runs fn(i) for i in [0, n), possibly on several threads. Iterations must
/// touch disjoint state; results are then independent of the schedule. Pass
/// workers = 0 to use the global cap. Exceptions are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned workers = 0);

}  // namespace fairgdt
