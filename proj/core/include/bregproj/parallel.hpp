#pragma once

// Deterministic fan-out: results are indexed, so the schedule never changes them.

#include <functional>

namespace bregproj {

/// BREGPROJ_THREADS if set to a positive integer, else the hardware count (at least 1).
int thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. The first
/// exception (lowest index) is rethrown after all workers finish.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace bregproj
