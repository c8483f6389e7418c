#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace gaussmax {

// Runs fn(i) for i in [0, n) across up to n_threads workers. Work items
// must write only to their own slots; callers aggregate afterwards in index
// order, which keeps results independent of the thread count.
inline void parallel_for(long n, int n_threads, const std::function<void(long)>& fn) {
    if (n <= 0) return;
    if (n_threads < 1) n_threads = 1;
    if (n_threads == 1 || n == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        try {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<long>(n
, n_threads));
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace gaussmax
