#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace exlab {

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

// Runs fn(block_index, lo, hi) over [0, n) split into fixed-size blocks.
// Block boundaries depend only on block_size, so per-block partial results
// merged in block order are bit-identical across thread counts.
template <class Fn>
void parallel_blocks(std::uint64_t n, std::uint64_t block_size, unsigned threads, Fn&& fn) {
    if (block_size == 0) block_size = 1;
    const std::uint64_t nblocks = (n + block_size - 1) / block_size;
    if (threads <= 1 || nblocks <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b)
            fn(b, b * block_size, std::min(n, (b + 1) * block_size));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto worker = [&] {
        std::uint64_t b;
        while (!failed.load(std::memory_order_relaxed) &&
               (b = next.fetch_add(1, std::memory_order_relaxed)) < nblocks) {
            try {
                fn(b, b * block_size, std::min(n, (b + 1) * block_size));
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned nt = std::min<std::uint64_t>(threads, nblocks);
    pool.reserve(nt);
    for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace exlab
