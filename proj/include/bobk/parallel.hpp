#pragma once

#include <functional>

namespace bobk {

// Worker count: hardware concurrency, capped by the BOBK_MAX_THREADS
// environment variable when it holds a positive integer.
int max_threads();

// Runs body(i) for i in [0, n) on up to max_threads() threads. Each index
// must write only to its own output slot; the first exception is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace bobk
