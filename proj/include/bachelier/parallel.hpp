#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace bachelier::sim {

/// Process-wide worker count for path-parallel loops. Results are
/// thread-count invariant by construction, so this only affects speed.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Runs fn(block_index, begin, end) over a fixed partition of [0,n) into
/// blocks of block_size items. The partition does not depend on the worker
/// count, so per-block outputs are reproducible.
template <typename BlockFn>
void for_blocks(std::size_t n, std::size_t block_size, BlockFn&& fn) {
    if (n == 0)
        return;
    const std::size_t n_blocks = (n + block_size - 1) / block_size;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(thread_count(), n_blocks));
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b)
            fn(b, b * block_size, std::min(n, (b + 1) * block_size));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks)
                return;
            fn(b, b * block_size, std::min(n, (b + 1) * block_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
}

/// Pairwise (cascade) sum; the result depends only on element order.
inline double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

} // namespace bachelier::sim
