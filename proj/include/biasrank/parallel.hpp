#pragma once

#include <cstddef>
#include <functional>

namespace biasrank {

/// Process-wide worker count for featurization fan-out. Scoring results
/// are always merged in index order, so the thread count never changes
/// outputs.
void set_worker_threads(int n);
int worker_threads();

/// Runs fn(i) for i in [0, n) across the configured workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace biasrank
