#pragma once

#include <cstddef>
#include <functional>

namespace nonloc {

/// Worker count used when a call passes threads = 0. Defaults to the
/// hardware concurrency; set once from the command line.
void set_default_threads(int threads);
int default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers using static
/// contiguous chunks. Each index is handled exactly once, so results written
/// per index do not depend on the thread count. The first exception thrown by
/// any worker is rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace nonloc
