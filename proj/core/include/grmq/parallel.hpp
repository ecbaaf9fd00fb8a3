#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace grmq {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Splits [0, count) into contiguous slices, one per worker. fn(begin, end) must
// not touch state outside its slice; results are therefore independent of the
// worker count.
template <typename Fn>
void parallel_for(std::uint64_t count, unsigned workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || count < 2 * workers) {
        fn(std::uint64_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t per = count / workers;
    std::uint64_t rem = count % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t end = begin + per + (w < rem ? 1 : 0);
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace grmq
