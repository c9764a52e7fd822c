#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace yamabe {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(0..n-1), partitioned across `threads` workers. Each index owns its
/// output slot, so results are identical for any thread count. The lowest-index
/// exception is rethrown.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::min(resolve_threads(threads), std::max(n, 1));
    if (threads <= 1) {
        for (int k = 0; k < n; ++k) fn(k);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            for (int k = w; k < n; k += threads) {
                try {
                    fn(k);
                } catch (...) {
                    errors[static_cast<std::size_t>(k)] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace yamabe
