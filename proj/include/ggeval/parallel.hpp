#pragma once

#include <cstddef>
#include <functional>

namespace ggeval {

// Process-wide worker count used by the parallel loops below.
// 0 means hardware concurrency. The default is 1: results never depend on
// the thread count, but single-threaded keeps unit tests and benchmarks
// predictable unless the caller opts in.
void set_worker_threads(unsigned n);
unsigned worker_threads();

// Runs fn(i) for i in [0, count) on up to `worker_threads()` threads with
// static chunking. fn must only write to slots owned by index i; under that
// contract the result is identical for any thread count. The first exception
// thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ggeval
