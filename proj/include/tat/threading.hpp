#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace tat {

// Static contiguous partition of [begin, end) over n_threads workers.  Each
// worker owns a disjoint index range and writes only through its own indices,
// so results are bit-identical for any thread count.
inline void parallel_for(int n_threads, long begin, long end,
                         const std::function<void(long)>& body) {
    long n = end - begin;
    if (n <= 0) return;
    if (n_threads < 1) n_threads = 1;
    if (n_threads > n) n_threads = static_cast<int>(n);
    if (n_threads == 1) {
        for (long i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(n_threads - 1);
    long chunk = (n + n_threads - 1) / n_threads;
    for (int w = 1; w < n_threads; ++w) {
        long lo = begin + w * chunk;
        long hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &body] {
            for (long i = lo; i < hi; ++i) body(i);
        });
    }
    long hi0 = std::min(end, begin + chunk);
    for (long i = begin; i < hi0; ++i) body(i);
    for (auto& t : workers) t.join();
}

}  // namespace tat
