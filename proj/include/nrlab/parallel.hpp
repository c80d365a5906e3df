#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace nrlab {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

// Static block partition of [0, n); fn(begin, end) runs on worker threads.
// Callers own determinism: results must be written to disjoint slots.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t, size_t)>& fn) {
    threads = std::min<size_t>(resolve_threads(threads), n == 0 ? 1 : n);
    if (threads <= 1 || n == 0) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        size_t lo = size_t(t) * chunk;
        size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(fn, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace nrlab
