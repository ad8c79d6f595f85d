#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace qsr {

// Worker count: hardware concurrency, capped by the QSR_MAX_THREADS
// environment variable when set. Always >= 1.
int default_thread_count();

// Runs fn(i) for i in [0, n). Work items must be independent; results must be
// written to per-index slots so the outcome does not depend on scheduling.
// threads <= 0 selects default_thread_count(). Exceptions from workers are
// rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

}  // namespace qsr
