#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lcross {

// Runs fn(task) for task = 0..n_tasks-1 on up to `workers` threads.
// Tasks must write only to their own output slots; the task index, not
// the executing thread, determines where results land, so the outcome
// is byte-identical for any worker count.
inline void parallel_for(std::size_t n_tasks, unsigned workers,
                         const std::function<void(std::size_t)>& fn) {
    if (n_tasks == 0) return;
    if (workers <= 1 || n_tasks == 1) {
        for (std::size_t t = 0; t < n_tasks; ++t) fn(t);
        return;
    }
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(workers, n_tasks));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= n_tasks || failed.load()) return;
                try {
                    fn(t);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace lcross
