#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace exlab {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// inverse of a mod m, gcd(a, m) = 1, m < 2^63
inline u64 modinv(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("modinv: arguments are not coprime");
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

// floor(sqrt(n)), exact
inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (u128)r * r > n) --r;
    while ((u128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

// floor(sqrt(n)) for 128-bit n, exact
inline u64 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    long double approx = sqrtl(static_cast<long double>(n));
    u128 r = static_cast<u128>(approx);
    if (r > 0) --r;
    // the seed is within a few ulps; fix up exactly via division to dodge overflow
    while (r > 0 && r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return static_cast<u64>(r);
}

// floor(2*sqrt(p)) = isqrt(4p); 4p is never a square for prime p
inline u64 floor_two_sqrt(u64 p) { return isqrt_u128((u128)4 * p); }

inline bool is_perfect_square_u64(u64 n) {
    u64 r = isqrt_u64(n);
    return r * r == n;
}

namespace detail {
inline bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true; // a witnesses compositeness
}
} // namespace detail

// deterministic for all 64-bit n
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (detail::miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

// Jacobi symbol (a | n), n odd positive
inline int jacobi(i64 a, u64 n) {
    if ((n & 1) == 0) throw std::invalid_argument("jacobi: n must be odd");
    a %= static_cast<i64>(n);
    if (a < 0) a += static_cast<i64>(n);
    u64 ua = static_cast<u64>(a);
    int result = 1;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(ua, n);
        if ((ua & 3) == 3 && (n & 3) == 3) result = -result;
        ua %= n;
    }
    return n == 1 ? result : 0;
}

// square root mod odd prime p (Tonelli-Shanks); requires (a|p) != -1
inline u64 sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) throw std::invalid_argument("sqrt_mod: not a quadratic residue");
    if ((p & 3) == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = static_cast<u64>(s);
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) { tt = mulmod(tt, tt, p); ++i; }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

} // namespace exlab
