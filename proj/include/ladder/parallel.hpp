#pragma once

// Ordered parallel map over independent grid points.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace ladder {

/// results[i] = fn(items[i]), computed by up to `jobs` worker threads (0 means
/// hardware concurrency). Output order follows input order. If calls throw,
/// the exception of the lowest index is rethrown after all workers finish.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn fn, unsigned jobs = 0)
    -> std::vector<decltype(fn(items.front()))> {
    using R = decltype(fn(items.front()));
    const size_t n = items.size();
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    const size_t workers = std::min<size_t>(jobs, n);

    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

} // namespace ladder
