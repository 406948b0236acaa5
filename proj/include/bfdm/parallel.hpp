// SPDX-License-Identifier: Apache-2.0
//
// Minimal deterministic parallel-for. Work items write into preallocated
// slots indexed by their loop counter, so the reduction order is independent
// of the thread schedule. Thread count comes from the BFDM_THREADS environment
// variable (the only environment variable the library consults), falling back
// to the hardware concurrency.

#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bfdm {

inline unsigned thread_count() {
    if (const char* env = std::getenv("BFDM_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

/// Runs body(i) for i in [0, n). body must only touch state owned by index i.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace bfdm
