#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "exlab/arith.hpp"
#include "exlab/rational.hpp"

namespace exlab {

enum class ClassKind { Central, NonSemisimple, SplitSemisimple, NonSplit };

inline const char* class_kind_name(ClassKind k) {
    switch (k) {
        case ClassKind::Central: return "central";
        case ClassKind::NonSemisimple: return "non-semisimple";
        case ClassKind::SplitSemisimple: return "split-semisimple";
        case ClassKind::NonSplit: return "non-split";
    }
    return "?";
}

struct ClassFamily {
    ClassKind kind;
    u64 class_count;
    u64 class_size;
};

// trace fiber C_ell(a): the union of conjugacy classes of trace a
struct TraceFiber {
    u64 ell = 0;
    u64 a = 0;
    Rat proportion;   // |C_ell(a)| / |GL2(F_ell)|
    u64 class_count = 0;
    u64 fiber_size = 0;
};

namespace detail {
inline void require_odd_prime(u64 ell, const char* who) {
    if (ell < 3 || (ell & 1) == 0 || !is_prime_u64(ell))
        throw std::invalid_argument(std::string(who) + ": ell must be an odd prime");
    if (ell >= (u64{1} << 15))
        throw std::invalid_argument(std::string(who) + ": ell too large for exact 64-bit arithmetic");
}
} // namespace detail

// |GL2(F_ell)| = (ell^2 - 1)(ell^2 - ell)
inline u64 gl2_group_order(u64 ell) {
    detail::require_odd_prime(ell, "gl2_group_order");
    return (ell * ell - 1) * (ell * ell - ell);
}

inline std::array<ClassFamily, 4> class_inventory(u64 ell) {
    detail::require_odd_prime(ell, "class_inventory");
    return {
        ClassFamily{ClassKind::Central, ell - 1, 1},
        ClassFamily{ClassKind::NonSemisimple, ell - 1, ell * ell - 1},
        ClassFamily{ClassKind::SplitSemisimple, (ell - 1) * (ell - 2) / 2, ell * (ell + 1)},
        ClassFamily{ClassKind::NonSplit, ell * (ell - 1) / 2, ell * (ell - 1)},
    };
}

inline TraceFiber trace_fiber(u64 ell, u64 a) {
    detail::require_odd_prime(ell, "trace_fiber");
    if (a >= ell) throw std::invalid_argument("trace_fiber: residue a must satisfy 0 <= a < ell");
    const i64 l = static_cast<i64>(ell);
    TraceFiber f;
    f.ell = ell;
    f.a = a;
    if (a == 0) {
        f.proportion = Rat(l, (l - 1) * (l + 1));
        f.class_count = ell - 1;
        f.fiber_size = ell * ell * (ell - 1);
    } else {
        f.proportion = Rat(l * l - l - 1, (l - 1) * (l - 1) * (l + 1));
        f.class_count = ell;
        f.fiber_size = ell * (ell * ell - ell - 1);
    }
    return f;
}

// brute-force oracle: #{M in GL2(F_ell) : tr M = a}, cost ell^4
inline u64 enumerate_trace_fiber(u64 ell, u64 a) {
    detail::require_odd_prime(ell, "enumerate_trace_fiber");
    if (a >= ell) throw std::invalid_argument("enumerate_trace_fiber: residue out of range");
    if (ell > 11)
        throw std::invalid_argument("enumerate_trace_fiber: refused, cost grows as ell^4 (ell <= 11)");
    u64 count = 0;
    for (u64 m00 = 0; m00 < ell; ++m00)
        for (u64 m01 = 0; m01 < ell; ++m01)
            for (u64 m10 = 0; m10 < ell; ++m10)
                for (u64 m11 = 0; m11 < ell; ++m11) {
                    if ((m00 + m11) % ell != a) continue;
                    u64 det = (m00 * m11 % ell + ell - m01 * m10 % ell) % ell;
                    if (det != 0) ++count;
                }
    return count;
}

// least positive non-residue, used as the witness D for non-split representatives
inline u64 least_nonresidue(u64 ell) {
    detail::require_odd_prime(ell, "least_nonresidue");
    for (u64 d = 2; d < ell; ++d)
        if (jacobi(static_cast<i64>(d), ell) == -1) return d;
    throw std::logic_error("least_nonresidue: unreachable for odd prime");
}

} // namespace exlab
