#include <catch2/catch.hpp>

#include "exlab/curve.hpp"
#include "exlab/sieve.hpp"
#include "exlab/trace.hpp"

using namespace exlab;

namespace {

const CurveQ& e11a3() { return *find_builtin_curve("11a3"); }
const CurveQ& e37a1() { return *find_builtin_curve("37a1"); }
const CurveQ& cm_x3x() { return *find_builtin_curve("x3-x"); }

// brute-force point count straight off the affine equation
u64 count_points_bruteforce(const CurveQ& e, u64 p) {
    auto c = reduce(e, p);
    REQUIRE(c);
    u64 n = 1;
    for (u64 x = 0; x < p; ++x)
        for (u64 y = 0; y < p; ++y) {
            u64 lhs = addmod(mulmod(y, y, p),
                             addmod(mulmod(mulmod(c->a1, x, p), y, p), mulmod(c->a3, y, p), p), p);
            u64 rhs = addmod(mulmod(mulmod(x, x, p), x, p),
                             addmod(mulmod(c->a2, mulmod(x, x, p), p),
                                    addmod(mulmod(c->a4, x, p), c->a6, p), p),
                             p);
            if (lhs == rhs) ++n;
        }
    return n;
}

} // namespace

TEST_CASE("model discriminants and bad primes") {
    CHECK(static_cast<long long>(e11a3().discriminant) == -11);
    CHECK(e11a3().bad_primes == std::vector<u64>{11});
    CHECK(static_cast<long long>(e37a1().discriminant) == 37);
    CHECK(e37a1().bad_primes == std::vector<u64>{37});
    CHECK(cm_x3x().bad_primes == std::vector<u64>{2});
    CurveQ x31 = make_curve(0, 0, 0, 0, 1); // y^2 = x^3 + 1
    CHECK(static_cast<long long>(x31.discriminant) == -432);
    CHECK(x31.bad_primes == std::vector<u64>{2, 3});
    CHECK_THROWS_AS(make_curve(0, 0, 0, 0, 0), std::invalid_argument); // singular
}

TEST_CASE("reduce signals bad reduction") {
    CHECK_FALSE(reduce(e11a3(), 11).has_value());
    CHECK(reduce(e11a3(), 2).has_value());
    CurveQ x31 = make_curve(0, 0, 0, 0, 1);
    CHECK_FALSE(reduce(x31, 3).has_value());
    CHECK_THROWS_AS(reduce(e11a3(), 4), std::invalid_argument); // not a prime
}

TEST_CASE("naive point counts on 11a3") {
    CHECK(count_points_naive(e11a3(), 2) == 5);
    CHECK(count_points_naive(e11a3(), 3) == 5);
    CHECK(count_points_naive(e11a3(), 5) == 5);
    CHECK(count_points_naive(e11a3(), 13) == 10);
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 13ull, 101ull})
        CHECK(count_points_naive(e11a3(), p) == count_points_bruteforce(e11a3(), p));
    CHECK_THROWS_AS(count_points_naive(e11a3(), 11), bad_reduction_error);
}

TEST_CASE("spot traces for 11a3") {
    CHECK(ap_naive(e11a3(), 2).ap == -2);
    CHECK(ap_naive(e11a3(), 3).ap == -1);
    CHECK(ap_naive(e11a3(), 5).ap == 1);
    CHECK(ap_naive(e11a3(), 13).ap == 4);
    CHECK(ap_naive(e11a3(), 19).ap == 0);
}

TEST_CASE("naive and BSGS traces agree (unit slice)") {
    for (const CurveQ& e : builtin_curves())
        for (u64 p : sieve_range(1, 3000))
            if (e.is_good(p)) {
                INFO(e.label << " at p = " << p);
                CHECK(ap_naive(e, p).ap == ap_bsgs(e, p).ap);
            }
}

TEST_CASE("BSGS handles an ambiguous group structure by falling back") {
    // y^2 = x^3 - x over F_257 has a group of order 256 with full 16-torsion:
    // every point order divides 16, so the Hasse window holds four candidate
    // multiples and random points cannot separate them
    const CurveQ& e = cm_x3x();
    auto c = reduce(e, 257);
    REQUIRE(c);
    CHECK_THROWS_AS(detail::bsgs_group_order(detail::to_short(*c)), ambiguous_order_error);
    CHECK(ap_bsgs(e, 257).ap == ap_naive(e, 257).ap);
    CHECK(ap_naive(e, 257).ap == 2);
}

TEST_CASE("trace record construction enforces the Hasse bound") {
    CHECK_THROWS(make_trace_record(2, 9, TraceMethod::Naive));
    CHECK(make_trace_record(13, 4, TraceMethod::Naive).ap == 4);
    for (const CurveQ& e : builtin_curves())
        for (u64 p : sieve_range(1, 2000))
            if (e.is_good(p)) {
                i64 a = ap_naive(e, p).ap;
                CHECK((i128)a * a <= (i128)4 * p);
            }
}

TEST_CASE("floor_two_sqrt is the exact integer part of 2 sqrt(p)") {
    CHECK(floor_two_sqrt(2) == 2);
    CHECK(floor_two_sqrt(5) == 4);
    CHECK(floor_two_sqrt(13) == 7);
    for (u64 p : sieve_range(1, 100000)) {
        u64 r = floor_two_sqrt(p);
        CHECK((u128)r * r <= (u128)4 * p);
        CHECK((u128)(r + 1) * (r + 1) > (u128)4 * p);
    }
}

TEST_CASE("extremal status agrees with its definition") {
    TraceCache cache;
    CHECK(is_extremal(e11a3(), 2, cache) == ExtremalStatus::Minus);
    CHECK(is_extremal(e11a3(), 3, cache) == ExtremalStatus::No);
    CHECK(is_extremal(e11a3(), 5, cache) == ExtremalStatus::No);
    CHECK_THROWS_AS(is_extremal(e11a3(), 11, cache), bad_reduction_error);
    for (u64 p : sieve_range(1, 5000))
        if (e11a3().is_good(p)) {
            ExtremalStatus st = is_extremal(e11a3(), p, cache);
            i64 a = ap_naive(e11a3(), p).ap;
            i64 edge = static_cast<i64>(floor_two_sqrt(p));
            ExtremalStatus want = a == edge    ? ExtremalStatus::Plus
                                  : a == -edge ? ExtremalStatus::Minus
                                               : ExtremalStatus::No;
            CHECK(st == want);
        }
}

TEST_CASE("residues of a_p mod ell") {
    TraceCache cache;
    CHECK(residue_ap_mod(e11a3(), 2, 5, cache) == 3);  // -2 mod 5
    CHECK(residue_ap_mod(e11a3(), 19, 3, cache) == 0); // a_19 = 0
    CHECK(residue_ap_mod(e11a3(), 13, 3, cache) == 1); // a_13 = 4
    CHECK_THROWS_AS(residue_ap_mod(e11a3(), 13, 4, cache), std::invalid_argument);
}

TEST_CASE("dispatch front caches and replays") {
    TraceCache cache;
    TraceRecord first = ap(e11a3(), 3, cache);
    CHECK(first.ap == -1);
    CHECK(first.method == TraceMethod::Naive);
    TraceRecord second = ap(e11a3(), 3, cache);
    CHECK(second.ap == -1);
    CHECK(second.method == TraceMethod::Cache);
    CHECK_THROWS_AS(ap(e11a3(), 11, cache), bad_reduction_error);
    // large prime goes through BSGS
    TraceRecord big = ap(e11a3(), 100003, cache);
    CHECK(big.method == TraceMethod::Bsgs);
    CHECK(ap(e11a3(), 100003, cache).method == TraceMethod::Cache);
}

TEST_CASE("corrupted cache entries are rejected on read") {
    TraceCache cache;
    cache.insert(2, 9); // violates Hasse
    CHECK_THROWS(ap(e11a3(), 2, cache));
}

TEST_CASE("CM curve y^2 = x^3 - x is supersingular at p = 3 mod 4") {
    const CurveQ& e = cm_x3x();
    for (u64 p : sieve_range(2, 10000))
        if (p % 4 == 3) {
            INFO("p = " << p);
            CHECK(ap_naive(e, p).ap == 0);
        }
}

TEST_CASE("likely-CM heuristic: zero-trace fraction") {
    TraceCache c1, c2, c3;
    CHECK(likely_cm(cm_x3x(), 10000, c1));
    CHECK_FALSE(likely_cm(e11a3(), 10000, c2));
    CHECK_FALSE(likely_cm(e37a1(), 10000, c3));
    // flags agree with the declared metadata across the corpus
    for (const CurveQ& e : builtin_curves()) {
        TraceCache c;
        CHECK(likely_cm(e, 10000, c) == e.declared_cm);
    }
}

TEST_CASE("batch traces match single calls and are thread-count independent") {
    std::vector<u64> primes;
    for (u64 p : sieve_range(1, 20000))
        if (e37a1().is_good(p)) primes.push_back(p);
    TraceCache c1, c2;
    auto a1 = traces_for(e37a1(), primes, c1, 1);
    auto a2 = traces_for(e37a1(), primes, c2, 4);
    CHECK(a1 == a2);
    for (std::size_t i = 0; i < primes.size(); i += 997)
        CHECK(a1[i] == ap_naive(e37a1(), primes[i]).ap);
}
