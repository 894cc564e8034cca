#ifndef GSCALE_PARALLEL_HPP
#define GSCALE_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gscale {

// Worker count: GSCALE_THREADS overrides hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("GSCALE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for i in [0, n) across a thread pool. Tasks must write results
// into per-index slots; outputs are then deterministic regardless of
// scheduling. The first exception thrown by a task is rethrown.
inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    const int workers = std::min<std::int64_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            std::int64_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace gscale

#endif
