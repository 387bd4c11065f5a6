#pragma once

#include <cstddef>
#include <functional>

namespace qspace {

/// Worker count: QSPACE_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(worker, begin, end) over contiguous chunks of [0, n).
void parallel_chunks(std::size_t n, const std::function<void(unsigned, std::size_t, std::size_t)>& body);

}  // namespace qspace
