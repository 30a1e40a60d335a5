#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

namespace itolab {

// 0 means "one per hardware thread".
inline unsigned resolve_workers(unsigned requested) noexcept {
    if (requested != 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Runs body(i) for i in [0, n) on contiguous chunks, one per worker.
///
/// Fail-fast with a deterministic report: when body throws, workers stop
/// once they pass the smallest failing index seen so far, and the exception
/// from the smallest failing index overall is rethrown. Every index below it
/// has been processed, so the rethrown error does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
    if (n == 0) {
        return;
    }
    const std::size_t n_workers = std::min<std::size_t>(resolve_workers(workers), n);
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> first_failure{kNone};
    std::vector<std::exception_ptr> errors(n_workers);
    std::vector<std::size_t> error_index(n_workers, kNone);

    auto run_chunk = [&](std::size_t w) {
        const std::size_t begin = n * w / n_workers;
        const std::size_t end = n * (w + 1) / n_workers;
        for (std::size_t i = begin; i < end; ++i) {
            if (i > first_failure.load(std::memory_order_relaxed)) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                errors[w] = std::current_exception();
                error_index[w] = i;
                std::size_t seen = first_failure.load();
                while (i < seen && !first_failure.compare_exchange_weak(seen, i)) {
                }
                return;
            }
        }
    };

    if (n_workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers - 1);
        for (std::size_t w = 1; w < n_workers; ++w) {
            pool.emplace_back(run_chunk, w);
        }
        run_chunk(0);
        for (auto& t : pool) {
            t.join();
        }
    }

    std::size_t best = kNone;
    std::exception_ptr to_throw;
    for (std::size_t w = 0; w < n_workers; ++w) {
        if (errors[w] && error_index[w] < best) {
            best = error_index[w];
            to_throw = errors[w];
        }
    }
    if (to_throw) {
        std::rethrow_exception(to_throw);
    }
}

}  // namespace itolab
