#pragma once

// Minimal deterministic fan-out helper: f(i) runs once for every
// i in [0, n); results must be written to per-index slots.

#include <thread>
#include <vector>

namespace leofa {

// Contiguous ranges per worker: adjacent result slots stay on one
// thread, so per-index writes do not ping-pong cache lines.
template <typename F>
void parallel_for(int n, int threads, F&& f) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    const int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            const int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
            const int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
            for (int i = lo; i < hi; ++i) f(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace leofa
