// parallel.hpp — Deterministic work sharing for embarrassingly parallel index
// ranges. Workers pull indices from an atomic counter; because every index
// writes a disjoint slice of the output, the result never depends on the
// thread count.
#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace blochmap {

inline int default_thread_count() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

inline void parallel_for(int begin, int end, int threads,
                         const std::function<void(int)>& body) {
    if (end <= begin) return;
    const int span = end - begin;
    if (threads < 1) threads = 1;
    if (threads > span) threads = span;
    if (threads == 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    std::atomic<int> next{begin};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < end; i = next.fetch_add(1)) {
            body(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int t = 0; t < threads - 1; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
}

} // namespace blochmap
