#pragma once

#include <cstddef>
#include <functional>

namespace spectral_seed {

// Worker count for internal loops: SPECTRAL_SEED_THREADS if set to a
// positive integer, otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

// Splits [0, n) into contiguous chunks and runs body(begin, end) on each,
// one chunk per worker. Chunks never overlap, so bodies that only write to
// their own index range produce results independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace spectral_seed
