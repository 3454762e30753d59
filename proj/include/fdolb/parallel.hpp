#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace fdolb {

inline unsigned worker_count() {
    if (const char* env = std::getenv("FD_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Split [0, n) into contiguous chunks across the worker pool.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back(fn, begin, end);
    }
    for (auto& t : pool) t.join();
}

} // namespace fdolb
