// Replicate-level worker pool. Replicates own disjoint RNG substreams and
// write results by replicate index, so the fold is independent of the worker
// count and results stay byte-identical across thread configurations.
#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace boolsim {

inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// fn(replicate_index, worker_index); worker_index supports per-worker scratch.
template <typename Fn>
void for_each_replicate(std::uint64_t n_reps, int threads, Fn&& fn) {
    threads = effective_threads(threads);
    if (threads <= 1 || n_reps < 2) {
        for (std::uint64_t r = 0; r < n_reps; ++r) fn(r, 0);
        return;
    }
    const std::uint64_t t = static_cast<std::uint64_t>(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::uint64_t w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            std::uint64_t lo = n_reps * w / t;
            std::uint64_t hi = n_reps * (w + 1) / t;
            for (std::uint64_t r = lo; r < hi; ++r) fn(r, static_cast<std::size_t>(w));
        });
    }
    for (std::thread& th : pool) th.join();
}

} // namespace boolsim
