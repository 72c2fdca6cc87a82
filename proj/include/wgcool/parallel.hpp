#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wgcool {

/// Runs task(i) for i in [0, count) on up to `threads` workers. Tasks must
/// write only to their own slot. The failure with the lowest index is
/// rethrown after all workers finish, so error reporting is order-stable.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task) {
    std::vector<std::exception_ptr> failures(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const std::size_t n = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : failures) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace wgcool
