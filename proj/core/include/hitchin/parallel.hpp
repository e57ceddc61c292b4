#pragma once

#include <functional>

namespace hitchin {

// Worker count: HITCHIN_LAB_THREADS if set (clamped to >= 1), else all cores.
int max_threads();

// Runs fn(0..n-1) across up to max_threads() workers. Callers must write results
// into per-index slots so the outcome is independent of scheduling; reductions
// happen after the join, in index order.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace hitchin
