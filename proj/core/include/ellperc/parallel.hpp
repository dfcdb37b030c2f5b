#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace ellperc {

/// Worker count from ELLIPSEPERC_THREADS, else the hardware concurrency.
inline int default_thread_count() {
    if (const char* env = std::getenv("ELLIPSEPERC_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n) on up to `threads` workers with a static
/// partition. An exception from a worker is rethrown once all have joined.
template <class Body>
void parallel_for(std::int64_t n, int threads, Body&& body) {
    threads = static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(n, 1)));
    if (threads == 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::int64_t i = t; i < n; i += threads) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ellperc
