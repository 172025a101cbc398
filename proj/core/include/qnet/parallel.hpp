#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qnet {

/// Parallel map over indices 0..count-1. Result i lands in slot i whatever
/// the scheduling, so downstream reductions see the same order (and the
/// same bytes) for any job count.
template <class Fn>
auto parallel_map(std::uint32_t count, unsigned jobs, Fn&& fn)
    -> std::vector<decltype(fn(std::uint32_t{}))> {
    using Result = decltype(fn(std::uint32_t{}));
    std::vector<Result> results(count);
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    if (count > 0 && jobs > count) jobs = count;

    if (jobs <= 1 || count <= 1) {
        for (std::uint32_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }

    std::atomic<std::uint32_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const std::uint32_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                try {
                    results[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(count, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace qnet
