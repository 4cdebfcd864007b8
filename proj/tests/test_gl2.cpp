#include <catch2/catch.hpp>

#include "exlab/gl2.hpp"
#include "exlab/sieve.hpp"

using namespace exlab;

TEST_CASE("group order values from the enumeration oracle") {
    // sizes confirmed by counting invertible matrices directly
    auto enumerate_group = [](u64 l) {
        u64 count = 0;
        for (u64 a = 0; a < l; ++a)
            for (u64 b = 0; b < l; ++b)
                for (u64 c = 0; c < l; ++c)
                    for (u64 d = 0; d < l; ++d)
                        if ((a * d % l + l - b * c % l) % l != 0) ++count;
        return count;
    };
    CHECK(gl2_group_order(3) == 48);
    CHECK(gl2_group_order(5) == 480);
    CHECK(gl2_group_order(7) == 2016);
    for (u64 l : {3ull, 5ull, 7ull}) CHECK(gl2_group_order(l) == enumerate_group(l));
}

TEST_CASE("group order rejects 2 and composites") {
    CHECK_THROWS_AS(gl2_group_order(2), std::invalid_argument);
    CHECK_THROWS_AS(gl2_group_order(9), std::invalid_argument);
    CHECK_THROWS_AS(gl2_group_order(1), std::invalid_argument);
}

TEST_CASE("class inventory for ell = 3") {
    auto inv = class_inventory(3);
    CHECK(inv[0].kind == ClassKind::Central);
    CHECK(inv[0].class_count == 2);
    CHECK(inv[0].class_size == 1);
    CHECK(inv[1].class_count == 2);
    CHECK(inv[1].class_size == 8);
    CHECK(inv[2].class_count == 1);
    CHECK(inv[2].class_size == 12);
    CHECK(inv[3].class_count == 3);
    CHECK(inv[3].class_size == 6);
    u64 mass = 0, classes = 0;
    for (const auto& fam : inv) {
        mass += fam.class_count * fam.class_size;
        classes += fam.class_count;
    }
    CHECK(mass == 48);
    CHECK(classes == 8); // = 3^2 - 1
}

TEST_CASE("inventory mass and fiber sizes add up for all odd ell <= 97") {
    for (u64 l : sieve_range(2, 97)) {
        const u64 g = gl2_group_order(l);
        u64 mass = 0, classes = 0;
        for (const auto& fam : class_inventory(l)) {
            mass += fam.class_count * fam.class_size;
            classes += fam.class_count;
        }
        CHECK(mass == g);
        CHECK(classes == l * l - 1);
        u64 fiber_sum = 0, class_sum = 0;
        Rat proportion_sum(0);
        for (u64 a = 0; a < l; ++a) {
            TraceFiber f = trace_fiber(l, a);
            fiber_sum += f.fiber_size;
            class_sum += f.class_count;
            proportion_sum = proportion_sum + f.proportion;
            // fiber size is the proportion times the group order, exactly
            CHECK(Rat(static_cast<i64>(f.fiber_size)) ==
                  f.proportion * Rat(static_cast<i64>(g)));
        }
        CHECK(fiber_sum == g);
        CHECK(class_sum == classes);
        CHECK(proportion_sum == Rat(1));
    }
}

TEST_CASE("trace fiber exact values") {
    TraceFiber f51 = trace_fiber(5, 1);
    CHECK(f51.proportion == Rat(19, 96));
    CHECK(f51.fiber_size == 95);
    CHECK(f51.class_count == 5);
    TraceFiber f50 = trace_fiber(5, 0);
    CHECK(f50.proportion == Rat(5, 24));
    CHECK(f50.fiber_size == 100);
    CHECK(f50.class_count == 4);
    TraceFiber f30 = trace_fiber(3, 0);
    CHECK(f30.proportion == Rat(3, 8));
    CHECK(f30.fiber_size == 18);
    CHECK_THROWS_AS(trace_fiber(5, 5), std::invalid_argument);
}

TEST_CASE("trace fibers match brute-force enumeration for ell in {3,5,7,11}") {
    CHECK(enumerate_trace_fiber(3, 0) == 18);
    CHECK(enumerate_trace_fiber(3, 1) == 15);
    CHECK(enumerate_trace_fiber(3, 1) + enumerate_trace_fiber(3, 2) + enumerate_trace_fiber(3, 0) == 48);
    CHECK(enumerate_trace_fiber(5, 1) == 95);
    for (u64 l : {3ull, 5ull, 7ull, 11ull})
        for (u64 a = 0; a < l; ++a)
            CHECK(trace_fiber(l, a).fiber_size == enumerate_trace_fiber(l, a));
    CHECK_THROWS_AS(enumerate_trace_fiber(13, 0), std::invalid_argument);
}

TEST_CASE("proportion stays within 2/ell^2 of 1/ell (exact rationals)") {
    for (u64 l : sieve_range(2, 97)) {
        const i64 li = static_cast<i64>(l);
        for (u64 a = 0; a < l; ++a) {
            Rat diff = abs(trace_fiber(l, a).proportion - Rat(1, li));
            CHECK(diff <= Rat(2, li * li));
        }
    }
}

TEST_CASE("least nonresidue is a nonresidue") {
    for (u64 l : {3ull, 5ull, 7ull, 11ull, 97ull}) {
        u64 d = least_nonresidue(l);
        CHECK(jacobi(static_cast<i64>(d), l) == -1);
        for (u64 c = 2; c < d; ++c) CHECK(jacobi(static_cast<i64>(c), l) == 1);
    }
}
