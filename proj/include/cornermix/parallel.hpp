#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace cornermix {

// Deterministic parallel map: work items are indexed, results are collected
// in index order regardless of thread schedule.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned nthreads = hw < count ? hw : static_cast<unsigned>(count);
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        threads.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += nthreads) fn(i);
        });
    }
    for (auto& th : threads) th.join();
}

}  // namespace cornermix
