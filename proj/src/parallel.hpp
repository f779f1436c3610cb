#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace lyapsft::detail {

// Runs body(i) for i in [0, n) on up to hardware_concurrency threads.
// Results must be written to per-index slots; body must not throw.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace lyapsft::detail
