#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "exlab/arith.hpp"
#include "exlab/curve.hpp"
#include "exlab/errors.hpp"
#include "exlab/parallel.hpp"

namespace exlab {

enum class TraceMethod { Naive, Bsgs, Cache };

struct TraceRecord {
    u64 p = 0;
    i64 ap = 0;
    TraceMethod method = TraceMethod::Naive;
};

enum class ExtremalStatus { Plus, Minus, No };

// every trace must satisfy ap^2 <= 4p
inline TraceRecord make_trace_record(u64 p, i64 ap, TraceMethod m) {
    if ((i128)ap * ap > (i128)4 * p)
        throw std::runtime_error("Hasse violation: |a_p| > 2*sqrt(p) at p = " + std::to_string(p));
    return TraceRecord{p, ap, m};
}

namespace detail {

// quadratic character table for F_p: chi[t] in {-1, 0, +1}
inline std::vector<signed char> chi_table(u64 p) {
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (u64 i = 1; i <= (p - 1) / 2; ++i) chi[mulmod(i, i, p)] = 1;
    return chi;
}

} // namespace detail

// #E(F_p) by direct enumeration (quadratic-character sum for odd p)
inline u64 count_points_naive(const CurveQ& e, u64 p) {
    auto c = reduce(e, p);
    if (!c) throw bad_reduction_error(p);
    if (p == 2) {
        u64 n = 1; // point at infinity
        for (u64 x = 0; x < 2; ++x)
            for (u64 y = 0; y < 2; ++y) {
                u64 lhs = (y * y + c->a1 * x * y + c->a3 * y) & 1;
                u64 rhs = (x * x * x + c->a2 * x * x + c->a4 * x + c->a6) & 1;
                if (lhs == rhs) ++n;
            }
        return n;
    }
    const auto chi = detail::chi_table(p);
    // complete the square: solutions in y of y^2 + h(x) y = f(x) number 1 + chi(h^2 + 4f)
    i64 sum = 0;
    for (u64 x = 0; x < p; ++x) {
        u64 h = addmod(mulmod(c->a1, x, p), c->a3, p);
        u64 x2 = mulmod(x, x, p);
        u64 f = addmod(mulmod(x2, x, p),
                       addmod(mulmod(c->a2, x2, p), addmod(mulmod(c->a4, x, p), c->a6, p), p), p);
        u64 d = addmod(mulmod(h, h, p), mulmod(4 % p, f, p), p);
        sum += chi[d];
    }
    return static_cast<u64>(static_cast<i64>(p) + 1 + sum);
}

inline TraceRecord ap_naive(const CurveQ& e, u64 p) {
    u64 n = count_points_naive(e, p);
    return make_trace_record(p, static_cast<i64>(p) + 1 - static_cast<i64>(n), TraceMethod::Naive);
}

namespace detail {

struct ShortCurve {
    u64 p = 0, A = 0, B = 0;
};

// isomorphic short model y^2 = x^3 + Ax + B, valid for p >= 5
inline ShortCurve to_short(const CurveFp& c) {
    const u64 p = c.p;
    u64 b2 = addmod(mulmod(c.a1, c.a1, p), mulmod(4 % p, c.a2, p), p);
    u64 b4 = addmod(mulmod(2 % p, c.a4, p), mulmod(c.a1, c.a3, p), p);
    u64 b6 = addmod(mulmod(c.a3, c.a3, p), mulmod(4 % p, c.a6, p), p);
    u64 c4 = submod(mulmod(b2, b2, p), mulmod(24 % p, b4, p), p);
    u64 c6 = submod(mulmod(mulmod(36 % p, b2, p), b4, p),
                    addmod(mulmod(mulmod(b2, b2, p), b2, p), mulmod(216 % p, b6, p), p), p);
    ShortCurve s;
    s.p = p;
    s.A = submod(0, mulmod(27 % p, c4, p), p);
    s.B = submod(0, mulmod(54 % p, c6, p), p);
    return s;
}

struct Pt {
    u64 x = 0, y = 0;
    bool inf = true;
};

inline Pt pt_add(const Pt& a, const Pt& b, const ShortCurve& s) {
    if (a.inf) return b;
    if (b.inf) return a;
    const u64 p = s.p;
    u64 lam;
    if (a.x == b.x) {
        if (addmod(a.y, b.y, p) == 0) return Pt{}; // opposite points (or 2-torsion doubling)
        u64 num = addmod(mulmod(3 % p, mulmod(a.x, a.x, p), p), s.A, p);
        lam = mulmod(num, modinv(addmod(a.y, a.y, p), p), p);
    } else {
        u64 num = submod(b.y, a.y, p);
        lam = mulmod(num, modinv(submod(b.x, a.x, p), p), p);
    }
    u64 x3 = submod(mulmod(lam, lam, p), addmod(a.x, b.x, p), p);
    u64 y3 = submod(mulmod(lam, submod(a.x, x3, p), p), a.y, p);
    return Pt{x3, y3, false};
}

inline Pt pt_mul(u64 k, Pt base, const ShortCurve& s) {
    Pt r;
    while (k) {
        if (k & 1) r = pt_add(r, base, s);
        base = pt_add(base, base, s);
        k >>= 1;
    }
    return r;
}

inline u64 splitmix64(u64 z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// a deterministic point with x derived from (p, attempt); never the identity
inline Pt random_point(const ShortCurve& s, u64 attempt) {
    const u64 p = s.p;
    u64 state = splitmix64(p ^ (attempt * 0xda3e39cb94b95bdbull));
    for (;;) {
        state = splitmix64(state);
        u64 x = state % p;
        u64 rhs = addmod(mulmod(mulmod(x, x, p), x, p), addmod(mulmod(s.A, x, p), s.B, p), p);
        if (rhs == 0) return Pt{x, 0, false};
        if (powmod(rhs, (p - 1) / 2, p) == 1) {
            u64 y = sqrt_mod(rhs, p);
            return Pt{x, y, false};
        }
    }
}

// all N in the Hasse window [p+1-s, p+1+s] with N*P = O (multiples of ord(P))
inline std::vector<u64> annihilators_in_window(const ShortCurve& s, const Pt& point) {
    const u64 p = s.p;
    const u64 w = floor_two_sqrt(p);
    const u64 base = p + 1 - w;
    const u64 span = 2 * w; // k ranges over [0, span]
    const u64 m = isqrt_u64(span) + 1;

    struct Baby { u64 x, y, j; };
    std::vector<Baby> babies;
    babies.reserve(m);
    Pt bp = point; // j * P for j >= 1
    for (u64 j = 1; j < m; ++j) {
        if (bp.inf) {
            // ord(P) = j < m: enumerate multiples of j in the window directly
            std::vector<u64> orders;
            for (u64 n = ((base + j - 1) / j) * j; n <= base + span; n += j) orders.push_back(n);
            return orders;
        }
        babies.push_back(Baby{bp.x, bp.y, j});
        bp = pt_add(bp, point, s);
    }
    std::sort(babies.begin(), babies.end(), [](const Baby& a, const Baby& b) { return a.x < b.x; });

    const Pt giant = pt_mul(m, point, s);
    Pt cur = pt_mul(base, point, s);
    std::vector<u64> ks;
    for (u64 b = 0; b * m <= span + m; ++b) {
        if (cur.inf) {
            u64 k = b * m; // j = 0
            if (k <= span) ks.push_back(k);
        } else {
            u64 negy = cur.y == 0 ? 0 : p - cur.y;
            auto lo = std::lower_bound(babies.begin(), babies.end(), cur.x,
                                       [](const Baby& a, u64 x) { return a.x < x; });
            for (auto it = lo; it != babies.end() && it->x == cur.x; ++it) {
                if (it->y == negy) { // cur + jP = O
                    u64 k = b * m + it->j;
                    if (k <= span) ks.push_back(k);
                }
            }
        }
        cur = pt_add(cur, giant, s);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::vector<u64> orders;
    orders.reserve(ks.size());
    for (u64 k : ks) {
        u64 n = base + k;
        if (pt_mul(n, point, s).inf) orders.push_back(n);
    }
    return orders;
}

// group order via random points; throws ambiguous_order_error when the
// candidate set cannot be reduced to one element within the budget
inline u64 bsgs_group_order(const ShortCurve& s, unsigned budget = 8) {
    std::vector<u64> candidates;
    for (unsigned attempt = 0; attempt < budget; ++attempt) {
        Pt point = random_point(s, attempt);
        std::vector<u64> ann = annihilators_in_window(s, point);
        if (ann.empty()) throw std::runtime_error("bsgs: no group-order candidate found");
        if (attempt == 0) {
            candidates = std::move(ann);
        } else {
            std::vector<u64> merged;
            std::set_intersection(candidates.begin(), candidates.end(), ann.begin(), ann.end(),
                                  std::back_inserter(merged));
            candidates = std::move(merged);
        }
        if (candidates.size() == 1) return candidates.front();
        if (candidates.empty()) throw std::runtime_error("bsgs: inconsistent candidate sets");
    }
    throw ambiguous_order_error(s.p, candidates.size());
}

} // namespace detail

// Hasse-window group order search. Below p = 230 (and on a rare ambiguous
// group structure above it) the interval holds several candidate orders that
// random points cannot separate; those cases fall back to naive counting.
inline TraceRecord ap_bsgs(const CurveQ& e, u64 p) {
    auto c = reduce(e, p);
    if (!c) throw bad_reduction_error(p);
    if (p <= 229) return ap_naive(e, p);
    detail::ShortCurve s = detail::to_short(*c);
    try {
        u64 n = detail::bsgs_group_order(s);
        return make_trace_record(p, static_cast<i64>(p) + 1 - static_cast<i64>(n), TraceMethod::Bsgs);
    } catch (const ambiguous_order_error&) {
        return ap_naive(e, p);
    }
}

// Concurrent per-curve trace cache: shared reads, serialized writes. Fresh
// inserts are journaled so cli-io can append them to the on-disk cache.
class TraceCache {
public:
    std::optional<i64> lookup(u64 p) const {
        std::shared_lock lk(mu_);
        auto it = map_.find(p);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    // returns false (and keeps the old value) if already present
    bool insert(u64 p, i64 ap, bool journal = true) {
        std::unique_lock lk(mu_);
        auto [it, fresh] = map_.emplace(p, ap);
        if (fresh && journal) journal_.emplace_back(p, ap);
        return fresh;
    }

    template <class It>
    void insert_bulk(It first, It last, bool journal = true) {
        std::unique_lock lk(mu_);
        for (It i = first; i != last; ++i) {
            auto [it, fresh] = map_.emplace(i->first, i->second);
            if (fresh && journal) journal_.push_back(*i);
        }
    }

    std::size_t size() const {
        std::shared_lock lk(mu_);
        return map_.size();
    }

    std::vector<std::pair<u64, i64>> drain_journal() {
        std::unique_lock lk(mu_);
        auto out = std::move(journal_);
        journal_.clear();
        return out;
    }

    std::vector<std::pair<u64, i64>> snapshot() const {
        std::shared_lock lk(mu_);
        return {map_.begin(), map_.end()};
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<u64, i64> map_;
    std::vector<std::pair<u64, i64>> journal_;
};

inline constexpr u64 kNaiveTraceCutoff = 10000;

// dispatch front: cache hit, else naive for p <= 10^4, BSGS above
inline TraceRecord ap(const CurveQ& e, u64 p, TraceCache& cache) {
    if (e.is_bad(p)) throw bad_reduction_error(p);
    if (auto hit = cache.lookup(p)) {
        // reject corrupted entries instead of propagating them
        return make_trace_record(p, *hit, TraceMethod::Cache);
    }
    TraceRecord r = p <= kNaiveTraceCutoff ? ap_naive(e, p) : ap_bsgs(e, p);
    cache.insert(p, r.ap);
    return r;
}

inline ExtremalStatus is_extremal(const CurveQ& e, u64 p, TraceCache& cache) {
    TraceRecord r = ap(e, p, cache);
    const i64 edge = static_cast<i64>(floor_two_sqrt(p));
    if (r.ap == edge) return ExtremalStatus::Plus;
    if (r.ap == -edge) return ExtremalStatus::Minus;
    return ExtremalStatus::No;
}

inline u64 residue_ap_mod(const CurveQ& e, u64 p, u64 ell, TraceCache& cache) {
    if (ell < 3 || (ell & 1) == 0 || !is_prime_u64(ell))
        throw std::invalid_argument("residue_ap_mod: ell must be an odd prime");
    TraceRecord r = ap(e, p, cache);
    i64 m = r.ap % static_cast<i64>(ell);
    if (m < 0) m += static_cast<i64>(ell);
    return static_cast<u64>(m);
}

// Declared CM status is metadata; this flags a likely mislabel by the
// zero-trace fraction over p <= x (supersingular density is 1/2 for CM, 0 for
// non-CM, so 0.4 separates them comfortably at x = 10^4).
inline bool likely_cm(const CurveQ& e, u64 x, TraceCache& cache, unsigned threads = default_threads()) {
    std::vector<u64> good;
    for (u64 p : sieve_range(1, x, threads))
        if (e.is_good(p)) good.push_back(p);
    if (good.empty()) return false;
    std::vector<i64> aps;
    aps.resize(good.size());
    parallel_blocks(good.size(), 256, threads, [&](u64, u64 lo, u64 hi) {
        for (u64 i = lo; i < hi; ++i) {
            if (auto hit = cache.lookup(good[i])) { aps[i] = *hit; continue; }
            TraceRecord r = good[i] <= kNaiveTraceCutoff ? ap_naive(e, good[i]) : ap_bsgs(e, good[i]);
            cache.insert(good[i], r.ap);
            aps[i] = r.ap;
        }
    });
    u64 zeros = 0;
    for (i64 a : aps)
        if (a == 0) ++zeros;
    return static_cast<double>(zeros) > 0.4 * static_cast<double>(good.size());
}

// traces for a batch of good primes, in input order; parallel and cached
inline std::vector<i64> traces_for(const CurveQ& e, std::span<const u64> primes, TraceCache& cache,
                                   unsigned threads = default_threads()) {
    std::vector<i64> out(primes.size());
    parallel_blocks(primes.size(), 256, threads, [&](u64, u64 lo, u64 hi) {
        std::vector<std::pair<u64, i64>> fresh;
        fresh.reserve(hi - lo);
        for (u64 i = lo; i < hi; ++i) {
            u64 p = primes[i];
            if (auto hit = cache.lookup(p)) {
                out[i] = *hit;
                continue;
            }
            TraceRecord r = p <= kNaiveTraceCutoff ? ap_naive(e, p) : ap_bsgs(e, p);
            out[i] = r.ap;
            fresh.emplace_back(p, r.ap);
        }
        if (!fresh.empty()) cache.insert_bulk(fresh.begin(), fresh.end());
    });
    return out;
}

} // namespace exlab
