#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace swmh {

/// Effective worker count: 0 means "use all hardware threads".
inline std::uint32_t resolve_threads(std::uint32_t requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<std::uint32_t>(hw);
}

/// Runs fn(begin, end) over a partition of [0, n) using at most `threads`
/// workers (0 = hardware concurrency). Chunks are contiguous, so callers that
/// write to disjoint, index-addressed slots get results independent of the
/// thread count. The first exception thrown by a worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, std::uint32_t threads, Fn&& fn) {
    std::uint32_t workers = resolve_threads(threads);
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        fn(std::size_t{0}, n);
        return;
    }
    if (workers > n) workers = static_cast<std::uint32_t>(n);

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    std::size_t chunk = n / workers;
    std::size_t rem = n % workers;
    std::size_t begin = 0;
    for (std::uint32_t w = 0; w < workers; ++w) {
        std::size_t end = begin + chunk + (w < rem ? 1 : 0);
        pool.emplace_back([&fn, &errors, w, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace swmh
