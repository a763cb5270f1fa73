#include "htcsim/threads.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace htcsim {

int thread_budget(int requested) {
    int n = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("HTC_SIM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

void parallel_chunks(size_t n, size_t chunk, int threads,
                     const std::function<void(size_t, size_t, size_t)>& fn) {
    if (n == 0) return;
    if (chunk < 1) chunk = 1;
    const size_t n_chunks = (n + chunk - 1) / chunk;
    const int workers = std::min<int>(thread_budget(threads), static_cast<int>(n_chunks));

    auto run_range = [&](size_t first_chunk, size_t stride) {
        for (size_t c = first_chunk; c < n_chunks; c += stride) {
            const size_t lo = c * chunk;
            fn(lo, std::min(lo + chunk, n), c);
        }
    };

    if (workers <= 1) {
        run_range(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(run_range, static_cast<size_t>(w), static_cast<size_t>(workers));
    for (auto& t : pool) t.join();
}

}  // namespace htcsim
