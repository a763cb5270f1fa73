#pragma once

#include <cstddef>
#include <functional>

namespace htcsim {

// Worker count: `requested` if positive, else std::thread::hardware_concurrency,
// in both cases capped by the HTC_SIM_THREADS environment variable when set.
int thread_budget(int requested);

// Run fn(lo, hi, chunk_index) over [0, n) split into fixed chunks of
// `chunk` items. Chunk boundaries depend only on (n, chunk), never on the
// worker count, and every chunk writes its own output slot, so results are
// byte-identical at any parallelism level.
void parallel_chunks(size_t n, size_t chunk, int threads,
                     const std::function<void(size_t, size_t, size_t)>& fn);

}  // namespace htcsim
