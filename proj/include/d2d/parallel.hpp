#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace d2d {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// Chunk boundaries depend only on (n, chunk_size), so any per-chunk outputs
// merged in chunk order are identical for every thread count.
inline void parallel_chunks(long n, long chunk_size, int threads,
                            const std::function<void(long, long, long)>& fn) {
    if (n <= 0) return;
    const long n_chunks = (n + chunk_size - 1) / chunk_size;
    threads = resolve_threads(threads);
    if (threads == 1 || n_chunks == 1) {
        for (long c = 0; c < n_chunks; ++c) {
            fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
        }
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= n_chunks) break;
            fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace d2d
