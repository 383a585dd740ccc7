#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lonet {

inline unsigned effective_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(worker_id) on `workers` threads (the calling thread is worker 0)
/// and rethrows the first exception raised by any worker.
template <typename Fn>
void run_workers(unsigned workers, Fn&& fn) {
    workers = effective_workers(workers);
    if (workers <= 1) {
        fn(0u);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    auto guarded = [&](unsigned id) {
        try {
            fn(id);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned id = 1; id < workers; ++id)
        pool.emplace_back(guarded, id);
    guarded(0);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

/// Dynamically scheduled parallel loop over [0, count) in chunks.
/// fn(begin, end) must be safe to call concurrently on disjoint ranges.
template <typename Fn>
void parallel_chunks(std::uint64_t count, unsigned workers, std::uint64_t chunk_size, Fn&& fn) {
    workers = effective_workers(workers);
    if (workers <= 1 || count <= chunk_size) {
        if (count > 0) fn(std::uint64_t{0}, count);
        return;
    }
    std::atomic<std::uint64_t> cursor{0};
    run_workers(workers, [&](unsigned) {
        for (;;) {
            const std::uint64_t begin = cursor.fetch_add(chunk_size, std::memory_order_relaxed);
            if (begin >= count) break;
            fn(begin, std::min(begin + chunk_size, count));
        }
    });
}

} // namespace lonet
