#pragma once

#include <functional>

namespace saddlepairs {

// Worker count resolution: requested > 0 wins, else the SADDLEPAIRS_THREADS
// environment variable, else hardware concurrency (at least 1).
int worker_count(int requested = 0);

// Runs fn(chunk) for chunk in [0, chunks) across at most `threads` workers.
// The chunk grid is fixed by the caller, so per-chunk partial results are
// independent of the worker count; combine them in chunk order to keep
// floating-point reductions deterministic.
void parallel_chunks(int chunks, int threads, const std::function<void(int)>& fn);

// Fixed chunk grid used by the pair loops.
inline constexpr int kPairChunks = 256;

}  // namespace saddlepairs
