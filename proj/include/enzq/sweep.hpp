#pragma once

// Bounded worker pool for independent sweep cells. Results come back in cell
// order no matter which worker finished first.

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace enzq {

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

template <class F>
auto parallel_map(std::size_t n, unsigned workers, F &&f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned k = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
    if (k <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(k);
        for (unsigned w = 0; w < k; ++w)
            pool.emplace_back(work);
    }
    // lowest failing cell wins, so the reported error is deterministic
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(n);
    for (auto &s : slots)
        out.push_back(std::move(*s));
    return out;
}

} // namespace enzq
