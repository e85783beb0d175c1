#pragma once

#include <functional>

namespace zmc {

/// Worker count: ZMC_THREADS if set (>= 1), else hardware concurrency.
int worker_count();

/// Run body(row) for row in [0, rows) on up to worker_count() threads.
/// Exceptions from the body are rethrown on the calling thread (first row wins).
void parallel_rows(int rows, const std::function<void(int)>& body);

}  // namespace zmc
