#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "exlab/arith.hpp"

namespace exlab {

// Exact rational on int64 with __int128 intermediates. Throws on overflow
// rather than silently wrapping; the class-combinatorics values stay far
// below the limits.
struct Rat {
    i64 num = 0;
    i64 den = 1;

    Rat() = default;
    Rat(i64 n) : num(n), den(1) {}
    Rat(i64 n, i64 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    static Rat from_i128(i128 n, i128 d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 a = n < 0 ? -n : n, b = d;
        while (b) { i128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        const i128 lim = std::numeric_limits<i64>::max();
        if (n > lim || n < -lim || d > lim) throw std::overflow_error("Rat: overflow");
        Rat r;
        r.num = static_cast<i64>(n);
        r.den = static_cast<i64>(d);
        if (r.num == 0) r.den = 1;
        return r;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from_i128((i128)a.num * b.den + (i128)b.num * a.den, (i128)a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return from_i128((i128)a.num * b.den - (i128)b.num * a.den, (i128)a.den * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from_i128((i128)a.num * b.num, (i128)a.den * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::invalid_argument("Rat: division by zero");
        return from_i128((i128)a.num * b.den, (i128)a.den * b.num);
    }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (i128)a.num * b.den < (i128)b.num * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) {
        return (i128)a.num * b.den <= (i128)b.num * a.den;
    }
};

inline Rat abs(const Rat& r) { return r.num < 0 ? Rat(-r.num, r.den) : r; }

} // namespace exlab
