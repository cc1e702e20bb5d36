#pragma once

#include <functional>

namespace pc {

// Thread count from PADIC_CHABAUTY_THREADS, else the hardware concurrency.
int default_thread_count();

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = default).
// Indices are handed out in blocks; callers write results by index so the
// outcome never depends on scheduling. The first exception is rethrown.
void parallel_for(long n, int threads, const std::function<void(long)>& fn);

}  // namespace pc
