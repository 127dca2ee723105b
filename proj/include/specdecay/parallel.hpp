#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

namespace specdecay {

/// Runs fn(begin, end) over a partition of [0, total) on the available
/// hardware threads. Work must write to disjoint preallocated slots so the
/// result is independent of scheduling; exceptions propagate to the caller.
template <typename Fn>
void chunked_parallel_for(std::int64_t total, Fn&& fn) {
    if (total <= 0) return;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::int64_t chunks = std::min<std::int64_t>(total, static_cast<std::int64_t>(hw));
    if (chunks <= 1) {
        fn(std::int64_t{0}, total);
        return;
    }
    const std::int64_t step = (total + chunks - 1) / chunks;
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<std::size_t>(chunks));
    for (std::int64_t begin = 0; begin < total; begin += step) {
        const std::int64_t end = std::min(total, begin + step);
        futures.push_back(std::async(std::launch::async, [&fn, begin, end] {
            fn(begin, end);
        }));
    }
    for (auto& f : futures) f.get();
}

} // namespace specdecay
