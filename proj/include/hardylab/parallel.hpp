#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace hardylab {

/// Worker count: HARDYLAB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency. Results never depend on this value.
inline unsigned worker_count() {
    if (const char* env = std::getenv("HARDYLAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end, acc) over fixed chunks of [0, n) on `threads` workers
/// and returns the chunk accumulators combined in chunk order. Chunk
/// boundaries depend only on n and chunk, so for an associative combine the
/// result is independent of the worker count.
template <class Acc, class Body, class Combine>
Acc parallel_chunks(std::uint64_t n, std::uint64_t chunk, unsigned threads, Body body, Combine combine) {
    const std::uint64_t n_chunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
    std::vector<Acc> partial(n_chunks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const std::uint64_t b = c * chunk;
            body(b, std::min(n, b + chunk), partial[c]);
        }
    };
    const unsigned t = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), std::max<std::uint64_t>(1, n_chunks)));
    if (t <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(t);
        for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    }
    Acc out{};
    for (const Acc& a : partial) out = combine(out, a);
    return out;
}

}  // namespace hardylab
