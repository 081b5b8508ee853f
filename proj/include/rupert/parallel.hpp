#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace rupert {

// Worker cap: explicit argument wins, then RUPERT_KIT_THREADS, then the
// hardware count.  0 means auto.
inline int resolve_thread_count(int requested) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("RUPERT_KIT_THREADS")) {
            n = std::atoi(env);
        }
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return n;
}

// Runs fn(i) for i in [0, n); results must be written to preallocated
// per-index slots so reductions stay order-independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const int workers = std::min<std::size_t>(resolve_thread_count(threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace rupert
