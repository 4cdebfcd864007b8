#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exlab/arith.hpp"
#include "exlab/errors.hpp"
#include "exlab/sieve.hpp"

namespace exlab {

// Long Weierstrass model y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 over Q.
// bad_primes is the prime support of the model discriminant; for a non-minimal
// model this may strictly contain the conductor support, and callers report
// the affected primes instead of resolving minimality.
struct CurveQ {
    i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    std::string label;
    bool declared_cm = false;
    i128 discriminant = 0;
    std::vector<u64> bad_primes;

    bool is_bad(u64 p) const {
        return std::binary_search(bad_primes.begin(), bad_primes.end(), p);
    }
    bool is_good(u64 p) const { return !is_bad(p); }
};

namespace detail {

inline std::vector<u64> prime_support_i128(i128 d) {
    if (d < 0) d = -d;
    std::vector<u64> out;
    if (d <= 1) return out;
    for (u64 p : simple_sieve(1000000)) {
        if ((i128)p * p > d) break;
        if (d % p == 0) {
            out.push_back(p);
            while (d % p == 0) d /= p;
        }
    }
    if (d > 1) {
        // no factor <= 10^6 remains; a cofactor below 10^12 must be prime
        if (d < (i128)1000000 * 1000000) {
            out.push_back(static_cast<u64>(d));
        } else if (d <= (i128)std::numeric_limits<u64>::max() && is_prime_u64(static_cast<u64>(d))) {
            out.push_back(static_cast<u64>(d));
        } else {
            throw std::invalid_argument("curve: cannot factor model discriminant; use smaller coefficients");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

inline CurveQ make_curve(i64 a1, i64 a2, i64 a3, i64 a4, i64 a6, std::string label = "",
                         bool declared_cm = false) {
    CurveQ e;
    e.a1 = a1; e.a2 = a2; e.a3 = a3; e.a4 = a4; e.a6 = a6;
    e.declared_cm = declared_cm;
    const i128 b2 = (i128)a1 * a1 + 4 * (i128)a2;
    const i128 b4 = 2 * (i128)a4 + (i128)a1 * a3;
    const i128 b6 = (i128)a3 * a3 + 4 * (i128)a6;
    const i128 b8 = (i128)a1 * a1 * a6 + 4 * (i128)a2 * a6 - (i128)a1 * a3 * a4 +
                    (i128)a2 * a3 * a3 - (i128)a4 * a4;
    e.discriminant = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (e.discriminant == 0) throw std::invalid_argument("curve: singular model (zero discriminant)");
    e.bad_primes = detail::prime_support_i128(e.discriminant);
    if (label.empty()) {
        e.label = "[" + std::to_string(a1) + "," + std::to_string(a2) + "," + std::to_string(a3) +
                  "," + std::to_string(a4) + "," + std::to_string(a6) + "]";
    } else {
        e.label = std::move(label);
    }
    return e;
}

// Reduced model over F_p.
struct CurveFp {
    u64 p = 0;
    u64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

inline u64 reduce_coeff(i64 a, u64 p) {
    i64 r = a % static_cast<i64>(p);
    if (r < 0) r += static_cast<i64>(p);
    return static_cast<u64>(r);
}

// Good reduction gives the reduced curve; a bad prime is a signaled outcome.
inline std::optional<CurveFp> reduce(const CurveQ& e, u64 p) {
    if (p < 2 || !is_prime_u64(p)) throw std::invalid_argument("reduce: p must be prime");
    if (e.is_bad(p)) return std::nullopt;
    CurveFp c;
    c.p = p;
    c.a1 = reduce_coeff(e.a1, p);
    c.a2 = reduce_coeff(e.a2, p);
    c.a3 = reduce_coeff(e.a3, p);
    c.a4 = reduce_coeff(e.a4, p);
    c.a6 = reduce_coeff(e.a6, p);
    return c;
}

// Built-in test corpus. The three CM members carry the declared flag; no
// j-invariant table is consulted anywhere.
inline const std::vector<CurveQ>& builtin_curves() {
    static const std::vector<CurveQ> curves = {
        make_curve(0, -1, 1, 0, 0, "11a3", false),  // y^2 + y = x^3 - x^2
        make_curve(0, 0, 1, -1, 0, "37a1", false),  // y^2 + y = x^3 - x
        make_curve(0, 0, 0, -1, 0, "x3-x", true),   // y^2 = x^3 - x
        make_curve(0, 0, 0, 1, 0, "x3+x", true),    // y^2 = x^3 + x
        make_curve(0, 0, 0, 0, -2, "x3-2", true),   // y^2 = x^3 - 2
    };
    return curves;
}

inline const CurveQ* find_builtin_curve(const std::string& label) {
    for (const auto& c : builtin_curves())
        if (c.label == label) return &c;
    return nullptr;
}

} // namespace exlab
