#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "exlab/arith.hpp"
#include "exlab/parallel.hpp"

namespace exlab {

// Integers covered per segment; balances cache locality against per-segment setup.
inline constexpr u64 kSieveSegmentSpan = u64{1} << 20;

// Dyadic window (x, 2x] cut into B = floor(omega) sub-intervals at the
// half-integer boundaries x_j = floor(x*(1+j/B)) + 1/2. Boundaries are kept
// as their integer floors so window membership never touches floating point:
// the integers in (x_j, x_{j+1}] are exactly (floor_j, floor_{j+1}].
struct PrimeWindow {
    u64 x = 0;
    double omega = 1.0;
    u64 B = 1;
    std::vector<u64> boundary_floor; // B+1 entries; boundary j is boundary_floor[j] + 1/2

    double boundary(std::size_t j) const { return static_cast<double>(boundary_floor.at(j)) + 0.5; }

    // integer range (lo, hi] of sub-interval j
    std::pair<u64, u64> sub_range(std::size_t j) const {
        if (j + 1 >= boundary_floor.size()) throw std::out_of_range("PrimeWindow::sub_range");
        return {boundary_floor[j], boundary_floor[j + 1]};
    }
};

inline PrimeWindow window_plan(u64 x, double omega) {
    if (x < 2) throw std::invalid_argument("window_plan: x must be >= 2");
    if (!(omega >= 1.0)) throw std::invalid_argument("window_plan: omega must be >= 1");
    PrimeWindow w;
    w.x = x;
    w.omega = omega;
    w.B = static_cast<u64>(omega);
    w.boundary_floor.reserve(w.B + 1);
    for (u64 j = 0; j <= w.B; ++j) {
        // floor(x*(1 + j/B)) = x + floor(x*j/B) for integer x
        u64 add = static_cast<u64>((u128)x * j / w.B);
        w.boundary_floor.push_back(x + add);
    }
    return w;
}

// primes <= n by a plain odd-only sieve; used as the base-prime source
inline std::vector<u64> simple_sieve(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    primes.push_back(2);
    if (n < 3) return primes;
    const u64 half = (n - 1) / 2; // odd candidates 3, 5, ..., indexed by (v-3)/2
    std::vector<u8> composite(half, 0);
    for (u64 i = 0; i < half; ++i) {
        if (composite[i]) continue;
        u64 p = 2 * i + 3;
        primes.push_back(p);
        if ((u128)p * p > n) continue;
        for (u64 j = (p * p - 3) / 2; j < half; j += p) composite[j] = 1;
    }
    return primes;
}

namespace detail {

// Applies sink(segment_index, prime) for each prime in (lo, hi], segment by
// segment. Segments are processed in parallel; the caller keys results by
// segment index to recover ascending order.
template <class Sink>
void segmented_sieve(u64 lo, u64 hi, unsigned threads, Sink&& sink) {
    if (hi < lo) throw std::invalid_argument("sieve: empty range, hi < lo");
    if (hi < 2 || hi == lo) return;
    const std::vector<u64> base = simple_sieve(isqrt_u64(hi));
    const u64 first = lo + 1, span = hi - lo;
    const u64 nsegs = (span + kSieveSegmentSpan - 1) / kSieveSegmentSpan;
    parallel_blocks(nsegs, 1, threads, [&](u64 seg, u64, u64) {
        const u64 seg_lo = first + seg * kSieveSegmentSpan;
        const u64 seg_hi = std::min(hi, seg_lo + kSieveSegmentSpan - 1); // inclusive
        if (seg_lo <= 2 && 2 <= seg_hi) sink(seg, 2);
        // odd candidates only
        u64 start = seg_lo | 1;
        if (start < 3) start = 3;
        if (start > seg_hi) return;
        const u64 count = (seg_hi - start) / 2 + 1;
        std::vector<u8> composite(count, 0);
        for (u64 p : base) {
            if (p == 2) continue;
            if ((u128)p * p > seg_hi) break;
            u64 m = ((start + p - 1) / p) * p; // first multiple >= start
            if (m < p * p) m = p * p;
            if ((m & 1) == 0) m += p;
            for (; m <= seg_hi; m += 2 * p) composite[(m - start) / 2] = 1;
        }
        for (u64 i = 0; i < count; ++i)
            if (!composite[i]) sink(seg, start + 2 * i);
    });
}

} // namespace detail

// ascending primes p with lo < p <= hi
inline std::vector<u64> sieve_range(u64 lo, u64 hi, unsigned threads = default_threads()) {
    if (hi < lo) throw std::invalid_argument("sieve_range: empty range, hi < lo");
    const u64 span = hi > lo ? hi - lo : 0;
    const u64 nsegs = span ? (span + kSieveSegmentSpan - 1) / kSieveSegmentSpan : 0;
    std::vector<std::vector<u64>> per_seg(nsegs);
    detail::segmented_sieve(lo, hi, threads, [&](u64 seg, u64 p) { per_seg[seg].push_back(p); });
    std::vector<u64> out;
    std::size_t total = 0;
    for (const auto& v : per_seg) total += v.size();
    out.reserve(total);
    for (const auto& v : per_seg) out.insert(out.end(), v.begin(), v.end());
    return out;
}

// #{p : lo < p <= hi}
inline u64 count_primes_in(u64 lo, u64 hi, unsigned threads = default_threads()) {
    if (hi < lo) throw std::invalid_argument("count_primes_in: empty range, hi < lo");
    const u64 span = hi > lo ? hi - lo : 0;
    const u64 nsegs = span ? (span + kSieveSegmentSpan - 1) / kSieveSegmentSpan : 0;
    std::vector<u64> per_seg(nsegs, 0);
    detail::segmented_sieve(lo, hi, threads, [&](u64 seg, u64) { ++per_seg[seg]; });
    u64 total = 0;
    for (u64 c : per_seg) total += c;
    return total;
}

// pi(x) = #{p <= x}
inline u64 prime_count(u64 x, unsigned threads = default_threads()) {
    if (x < 1) throw std::invalid_argument("prime_count: x must be >= 1");
    if (x < 2) return 0;
    return count_primes_in(1, x, threads);
}

} // namespace exlab
