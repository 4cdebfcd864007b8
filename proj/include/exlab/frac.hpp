#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <mpfr.h>

#include "exlab/arith.hpp"
#include "exlab/errors.hpp"

namespace exlab {

// half-open fractional window [delta1, delta2)
struct WindowSpec {
    double delta1 = 0.0;
    double delta2 = 1.0;
    double delta() const { return delta2 - delta1; }
};

inline WindowSpec window_spec(double d1, double d2) {
    if (!(d1 >= 0.0 && d1 < d2 && d2 <= 1.0))
        throw std::invalid_argument("window_spec: need 0 <= delta1 < delta2 <= 1 (empty window)");
    return WindowSpec{d1, d2};
}

enum class ThetaKind { Zero, Half, One, General };

struct ThetaParam {
    ThetaKind kind = ThetaKind::General;
    double value = 0.0;
};

inline ThetaParam theta_param(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
    if (t == 0.0) return {ThetaKind::Zero, 0.0};
    if (t == 0.5) return {ThetaKind::Half, 0.5};
    if (t == 1.0) return {ThetaKind::One, 1.0};
    return {ThetaKind::General, t};
}

// alpha as an exact positive rational; doubles convert exactly (dyadic)
struct AlphaParam {
    i64 num = 1;
    i64 den = 1;
    double value = 1.0;
};

inline AlphaParam alpha_param(i64 num, i64 den) {
    if (num <= 0 || den <= 0) throw std::invalid_argument("alpha must be positive");
    i64 g = std::gcd(num, den);
    AlphaParam a{num / g, den / g, 0.0};
    a.value = static_cast<double>(a.num) / static_cast<double>(a.den);
    return a;
}

inline AlphaParam alpha_param(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be positive and finite");
    int e;
    double m = std::frexp(alpha, &e); // alpha = m * 2^e, m in [0.5, 1)
    i64 mant = static_cast<i64>(std::ldexp(m, 53));
    int shift = 53 - e; // alpha = mant / 2^shift
    while (shift > 0 && (mant & 1) == 0) { mant >>= 1; --shift; }
    if (shift < 0) {
        if (-shift > 9) throw std::invalid_argument("alpha too large");
        AlphaParam a{mant << (-shift), 1, alpha};
        return a;
    }
    if (shift > 62) throw std::invalid_argument("alpha too small");
    AlphaParam a{mant, i64{1} << shift, alpha};
    return a;
}

enum class Membership { In, Out, Uncertain };

// Fractional part of alpha * p^theta with a rigorous absolute error bound.
// Exact representations (rational theta in {0, 1}, square-root form at 1/2)
// are kept alongside the double so window decisions can be settled exactly.
struct FracValue {
    double value = 0.0;
    double err = 0.0;
    bool exact = false;

    i64 a_num = 1, a_den = 1;
    ThetaParam theta;
    u64 p = 0;

    enum class Rep { Interval, Rational, SqrtForm } rep = Rep::Interval;
    i64 r_num = 0, r_den = 1; // Rational: frac = r_num / r_den
    i64 int_part = 0;         // floor(alpha p^theta) when int_part_known
    bool int_part_known = false;
};

namespace detail {

inline constexpr mpfr_prec_t kPrecLadder[3] = {53, 128, 256};

struct MpfrValue {
    mpfr_t v;
    explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~MpfrValue() { mpfr_clear(v); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    operator mpfr_ptr() { return v; }
    operator mpfr_srcptr() const { return v; }
};

// directed enclosure of y = (num/den) * p^theta; floors must agree for the
// fractional enclosure to be meaningful
struct YEnclosure {
    bool int_decided = false;
    bool int_fits_i64 = false;
    i64 int_part = 0;
    double frac_lo_d = 0.0, frac_hi_d = 0.0;
    int cmp_result = 0;     // valid when cmp_requested
    bool cmp_decided = false;
};

// Computes the enclosure at precision `prec`. If `threshold` is non-null,
// also compares frac against *threshold at full mpfr precision.
inline YEnclosure y_enclosure(i64 num, i64 den, double theta, u64 p, mpfr_prec_t prec,
                              const double* threshold) {
    MpfrValue base(prec), expo(prec), ylo(prec), yhi(prec), flo(prec), fhi(prec), fl(prec), fh(prec);
    mpfr_set_ui(base, p, MPFR_RNDN);      // exact
    mpfr_set_d(expo, theta, MPFR_RNDN);   // exact
    mpfr_pow(ylo, base, expo, MPFR_RNDD);
    mpfr_pow(yhi, base, expo, MPFR_RNDU);
    mpfr_mul_si(ylo, ylo, num, MPFR_RNDD);
    mpfr_mul_si(yhi, yhi, num, MPFR_RNDU);
    mpfr_div_si(ylo, ylo, den, MPFR_RNDD);
    mpfr_div_si(yhi, yhi, den, MPFR_RNDU);

    YEnclosure out;
    mpfr_floor(fl, ylo);
    mpfr_floor(fh, yhi);
    if (mpfr_cmp(fl, fh) != 0) return out; // straddles an integer at this precision
    out.int_decided = true;
    out.int_fits_i64 = mpfr_fits_slong_p(fl, MPFR_RNDN) != 0;
    if (out.int_fits_i64) out.int_part = mpfr_get_si(fl, MPFR_RNDN);
    mpfr_sub(flo, ylo, fl, MPFR_RNDD);
    mpfr_sub(fhi, yhi, fl, MPFR_RNDU);
    out.frac_lo_d = mpfr_get_d(flo, MPFR_RNDD);
    out.frac_hi_d = mpfr_get_d(fhi, MPFR_RNDU);
    if (threshold) {
        int clo = mpfr_cmp_d(flo, *threshold);
        int chi = mpfr_cmp_d(fhi, *threshold);
        if (clo > 0) { out.cmp_decided = true; out.cmp_result = 1; }
        else if (chi < 0) { out.cmp_decided = true; out.cmp_result = -1; }
        else if (clo == 0 && chi == 0) { out.cmp_decided = true; out.cmp_result = 0; }
    }
    return out;
}

// exact sign of (n/d - t) for 0 <= n < d, arbitrary double t
inline int cmp_rational_double(i64 n, i64 d, double t) {
    if (t <= 0.0) {
        if (t < 0.0) return 1;
        return n == 0 ? 0 : 1;
    }
    if (t >= 1.0) return -1;
    if (n == 0) return -1; // 0 < t
    int e;
    double m = std::frexp(t, &e);
    i64 mant = static_cast<i64>(std::ldexp(m, 53)); // t = mant * 2^(e-53)
    int s = 53 - e;                                  // t = mant / 2^s, s >= 1 here
    while (s > 0 && (mant & 1) == 0) { mant >>= 1; --s; }
    // compare n * 2^s vs mant * d
    u128 rhs = (u128)mant * (u128)d;
    int nbits = 64 - __builtin_clzll(static_cast<u64>(n));
    if (nbits + s > 127) return 1; // lhs overflows 128 bits, rhs cannot
    u128 lhs = (u128)n << s;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

// sign of (u*sqrt(p) - v*q) where q = m + t >= 0; exact when the squared
// comparison fits 128 bits, otherwise unresolved at this tier
inline std::optional<int> cmp_sqrt_vs_dyadic_exact(i64 u_, i64 v_, u64 p, i64 m_, double t) {
    const u64 u = static_cast<u64>(u_), v = static_cast<u64>(v_);
    u64 mant = 0;
    int s = 0;
    if (t > 0.0) {
        int e;
        double fr = std::frexp(t, &e);
        i64 mi = static_cast<i64>(std::ldexp(fr, 53));
        s = 53 - e;
        while (s > 0 && (mi & 1) == 0) { mi >>= 1; --s; }
        if (s < 0) {
            if (-s > 10) return std::nullopt;
            mi <<= -s;
            s = 0;
        }
        mant = static_cast<u64>(mi);
    }
    // q = m + t = (m * 2^s + mant) / 2^s; compare u^2 p 4^s against (v qnum)^2
    const int mbits = m_ ? 64 - __builtin_clzll(static_cast<u64>(m_)) : 0;
    if (mbits + s > 62) return std::nullopt;
    const u64 qnum = (static_cast<u64>(m_) << s) + mant;
    const int qbits = qnum ? 64 - __builtin_clzll(qnum) : 0;
    const int vbits = 64 - __builtin_clzll(v);
    if (qbits + vbits > 63) return std::nullopt;
    const u64 qv = qnum * v;
    const int qvbits = qv ? 64 - __builtin_clzll(qv) : 0;
    if (2 * qvbits > 126) return std::nullopt;
    const u128 rhs = (u128)qv * qv;
    const int ubits = 64 - __builtin_clzll(u);
    const int pbits = 64 - __builtin_clzll(p);
    if (2 * ubits + pbits + 2 * s > 126) return std::nullopt;
    u128 lhs = ((u128)u * u) * p;
    lhs <<= 2 * s;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0; // would force sqrt(p) rational; unreachable for prime p
}

// compare u*sqrt(p) against v*(m + t) with mpfr directed rounding
inline std::optional<int> cmp_sqrtform_mpfr(i64 u, i64 v, u64 p, i64 m, double t, mpfr_prec_t prec) {
    MpfrValue slo(prec), shi(prec), llo(prec), lhi(prec), rlo(prec), rhi(prec), q(prec);
    mpfr_sqrt_ui(slo, p, MPFR_RNDD);
    mpfr_sqrt_ui(shi, p, MPFR_RNDU);
    mpfr_mul_si(llo, slo, u, MPFR_RNDD);
    mpfr_mul_si(lhi, shi, u, MPFR_RNDU);
    mpfr_set_si(q, m, MPFR_RNDN); // exact
    mpfr_add_d(rlo, q, t, MPFR_RNDD);
    mpfr_add_d(rhi, q, t, MPFR_RNDU);
    mpfr_mul_si(rlo, rlo, v, MPFR_RNDD);
    mpfr_mul_si(rhi, rhi, v, MPFR_RNDU);
    if (mpfr_cmp(lhi, rlo) < 0) return -1;
    if (mpfr_cmp(llo, rhi) > 0) return 1;
    return std::nullopt;
}

// directed enclosure [lo, hi] of the fractional part itself, at precision
// `prec`, from whatever representation the value carries; false when the
// integer part cannot be pinned at this precision
inline bool frac_enclosure_mpfr(const FracValue& f, mpfr_prec_t prec, mpfr_ptr lo, mpfr_ptr hi) {
    switch (f.rep) {
        case FracValue::Rep::Rational:
            mpfr_set_si(lo, f.r_num, MPFR_RNDD);
            mpfr_div_si(lo, lo, f.r_den, MPFR_RNDD);
            mpfr_set_si(hi, f.r_num, MPFR_RNDU);
            mpfr_div_si(hi, hi, f.r_den, MPFR_RNDU);
            return true;
        case FracValue::Rep::SqrtForm: {
            // frac = (u sqrt(p) - m v) / v
            MpfrValue mv(prec);
            mpfr_sqrt_ui(lo, f.p, MPFR_RNDD);
            mpfr_mul_si(lo, lo, f.a_num, MPFR_RNDD);
            mpfr_sqrt_ui(hi, f.p, MPFR_RNDU);
            mpfr_mul_si(hi, hi, f.a_num, MPFR_RNDU);
            mpfr_set_si(mv, f.int_part, MPFR_RNDN);
            mpfr_mul_si(mv, mv, f.a_den, MPFR_RNDN); // exact: |m v| < 2^63
            mpfr_sub(lo, lo, mv, MPFR_RNDD);
            mpfr_sub(hi, hi, mv, MPFR_RNDU);
            mpfr_div_si(lo, lo, f.a_den, MPFR_RNDD);
            mpfr_div_si(hi, hi, f.a_den, MPFR_RNDU);
            return true;
        }
        case FracValue::Rep::Interval: {
            MpfrValue base(prec), expo(prec), fl(prec), fh(prec);
            mpfr_set_ui(base, f.p, MPFR_RNDN);
            mpfr_set_d(expo, f.theta.value, MPFR_RNDN);
            mpfr_pow(lo, base, expo, MPFR_RNDD);
            mpfr_pow(hi, base, expo, MPFR_RNDU);
            mpfr_mul_si(lo, lo, f.a_num, MPFR_RNDD);
            mpfr_mul_si(hi, hi, f.a_num, MPFR_RNDU);
            mpfr_div_si(lo, lo, f.a_den, MPFR_RNDD);
            mpfr_div_si(hi, hi, f.a_den, MPFR_RNDU);
            mpfr_floor(fl, lo);
            mpfr_floor(fh, hi);
            if (mpfr_cmp(fl, fh) != 0) return false;
            mpfr_sub(lo, lo, fl, MPFR_RNDD);
            mpfr_sub(hi, hi, fl, MPFR_RNDU);
            return true;
        }
    }
    return false;
}

} // namespace detail

// sign of (frac - t); nullopt when undecided within the allowed precision
// rungs (max_level: 0 = default rung, 1 = 128-bit, 2 = 256-bit)
inline std::optional<int> cmp_frac_threshold(const FracValue& f, double t, int max_level = 2) {
    using Rep = FracValue::Rep;
    if (f.rep == Rep::Rational) return detail::cmp_rational_double(f.r_num, f.r_den, t);
    if (f.rep == Rep::SqrtForm) {
        if (t <= 0.0) return 1; // frac > 0 always (u^2 p is never a perfect square)
        if (t >= 1.0) return -1;
        // screen in long double
        long double lhs = static_cast<long double>(f.a_num) * sqrtl(static_cast<long double>(f.p));
        long double rhs = (static_cast<long double>(f.int_part) + static_cast<long double>(t)) *
                          static_cast<long double>(f.a_den);
        long double margin = (lhs + rhs) * 1e-17L;
        if (lhs > rhs + margin) return 1;
        if (lhs < rhs - margin) return -1;
        if (auto r = detail::cmp_sqrt_vs_dyadic_exact(f.a_num, f.a_den, f.p, f.int_part, t)) return *r;
        for (int lvl = 1; lvl <= max_level; ++lvl) {
            if (auto r = detail::cmp_sqrtform_mpfr(f.a_num, f.a_den, f.p, f.int_part, t,
                                                   detail::kPrecLadder[lvl]))
                return *r;
        }
        return std::nullopt;
    }
    // Interval: screen against the stored enclosure, then recompute sharper
    if (f.value - f.err > t) return 1;
    if (f.value + f.err < t) return -1;
    for (int lvl = 1; lvl <= max_level; ++lvl) {
        auto enc = detail::y_enclosure(f.a_num, f.a_den, f.theta.value, f.p,
                                       detail::kPrecLadder[lvl], &t);
        if (enc.cmp_decided) return enc.cmp_result;
    }
    return std::nullopt;
}

inline FracValue frac_power(const AlphaParam& alpha, const ThetaParam& theta, u64 p) {
    if (p < 2) throw std::invalid_argument("frac_power: p must be a prime (>= 2)");
    FracValue f;
    f.a_num = alpha.num;
    f.a_den = alpha.den;
    f.theta = theta;
    f.p = p;

    auto fill_rational = [&](u64 num_mod, i64 den) {
        f.rep = FracValue::Rep::Rational;
        f.r_num = static_cast<i64>(num_mod);
        f.r_den = den;
        f.value = static_cast<double>(f.r_num) / static_cast<double>(f.r_den);
        const bool dyadic = (den & (den - 1)) == 0 && num_mod < (u64{1} << 53);
        if (num_mod == 0 || dyadic) {
            f.exact = true;
            f.err = 0.0;
        } else {
            f.exact = false;
            f.err = std::ldexp(1.0, -52);
        }
    };

    switch (theta.kind) {
        case ThetaKind::Zero: {
            f.int_part = alpha.num / alpha.den;
            f.int_part_known = true;
            fill_rational(static_cast<u64>(alpha.num % alpha.den), alpha.den);
            return f;
        }
        case ThetaKind::One: {
            // frac((num * p) / den) = ((num mod den) * (p mod den) mod den) / den
            const u64 den = static_cast<u64>(alpha.den);
            u64 num_mod = mulmod(static_cast<u64>(alpha.num) % den, p % den, den);
            u128 whole = (u128)(u64)alpha.num * p / den;
            if (whole <= (u128)std::numeric_limits<i64>::max()) {
                f.int_part = static_cast<i64>(whole);
                f.int_part_known = true;
            }
            fill_rational(num_mod, alpha.den);
            return f;
        }
        case ThetaKind::Half: {
            const int ubits = 64 - __builtin_clzll(static_cast<u64>(alpha.num));
            const int pbits = 64 - __builtin_clzll(p);
            if (2 * ubits + pbits <= 126) {
                u128 n = (u128)(u64)alpha.num * (u64)alpha.num * p;
                u64 root = isqrt_u128(n); // floor(u * sqrt(p))
                u64 mpart = root / static_cast<u64>(alpha.den);
                f.rep = FracValue::Rep::SqrtForm;
                f.int_part = static_cast<i64>(mpart);
                f.int_part_known = true;
                long double sp = sqrtl(static_cast<long double>(p));
                long double val = (static_cast<long double>(alpha.num) * sp -
                                   static_cast<long double>(f.int_part) * alpha.den) /
                                  static_cast<long double>(alpha.den);
                double approx_err =
                    static_cast<double>(static_cast<long double>(alpha.num) * sp /
                                        static_cast<long double>(alpha.den)) *
                        std::ldexp(1.0, -61) +
                    std::ldexp(1.0, -53);
                if (approx_err <= std::ldexp(1.0, -40)) {
                    f.value = static_cast<double>(val);
                    if (f.value >= 1.0) f.value = std::nextafter(1.0, 0.0);
                    if (f.value < 0.0) f.value = 0.0;
                    f.err = approx_err;
                    f.exact = false;
                    return f;
                }
                // fall through to an mpfr midpoint for the stored double, keeping the exact rep
                auto enc = detail::y_enclosure(alpha.num, alpha.den, 0.5, p, 128, nullptr);
                if (enc.int_decided) {
                    f.value = 0.5 * (enc.frac_lo_d + enc.frac_hi_d);
                    f.err = 0.5 * (enc.frac_hi_d - enc.frac_lo_d) + std::ldexp(1.0, -52);
                    f.exact = false;
                    return f;
                }
            }
            break; // alpha numerator too large for the integer path
        }
        case ThetaKind::General:
            break;
    }

    // general path: directed mpfr ladder until the enclosure is tight
    for (int lvl = 0; lvl < 3; ++lvl) {
        auto enc = detail::y_enclosure(alpha.num, alpha.den, theta.value, p,
                                       detail::kPrecLadder[lvl], nullptr);
        if (!enc.int_decided) continue;
        double width = enc.frac_hi_d - enc.frac_lo_d;
        if (width <= std::ldexp(1.0, -41) || lvl == 2) {
            f.rep = FracValue::Rep::Interval;
            f.value = 0.5 * (enc.frac_lo_d + enc.frac_hi_d);
            if (f.value >= 1.0) f.value = std::nextafter(1.0, 0.0);
            if (f.value < 0.0) f.value = 0.0;
            f.err = 0.5 * width + std::ldexp(1.0, -52);
            f.exact = false;
            if (enc.int_fits_i64) {
                f.int_part = enc.int_part;
                f.int_part_known = true;
            }
            return f;
        }
    }
    throw uncertain_error(p);
}

inline FracValue frac_power(double alpha, double theta, u64 p) {
    return frac_power(alpha_param(alpha), theta_param(theta), p);
}

inline Membership in_half_open(const FracValue& v, const WindowSpec& w, int max_level = 2) {
    auto c2 = cmp_frac_threshold(v, w.delta2, max_level);
    if (c2 && *c2 >= 0) return Membership::Out;
    auto c1 = cmp_frac_threshold(v, w.delta1, max_level);
    if (c1 && *c1 < 0) return Membership::Out;
    if (c1 && c2) return Membership::In;
    return Membership::Uncertain;
}

// the bracket difference [alpha p^theta - delta1] - [alpha p^theta - delta2];
// equals 1 exactly when delta1 <= {alpha p^theta} < delta2
inline int indicator_bracket(const AlphaParam& alpha, const ThetaParam& theta, const WindowSpec& w,
                             u64 p) {
    FracValue f = frac_power(alpha, theta, p);
    auto c1 = cmp_frac_threshold(f, w.delta1);
    auto c2 = cmp_frac_threshold(f, w.delta2);
    if (!c1 || !c2) throw uncertain_error(p);
    int n1 = *c1 >= 0 ? 1 : 0; // [y - delta1] = m - (frac < delta1)
    int n2 = *c2 >= 0 ? 1 : 0;
    return n1 - n2;
}

inline int indicator_bracket(double alpha, double theta, const WindowSpec& w, u64 p) {
    return indicator_bracket(alpha_param(alpha), theta_param(theta), w, p);
}

// floor(2 sqrt(p)) mod ell, entirely in integers
inline u64 bridge_residue(u64 p, u64 ell) {
    if (ell < 3 || (ell & 1) == 0 || !is_prime_u64(ell))
        throw std::invalid_argument("bridge_residue: ell must be an odd prime");
    return floor_two_sqrt(p) % ell;
}

// test-mode variant: also checks the fractional-window characterization
// {2 sqrt(p) / ell} in [a/ell, (a+1)/ell)
inline u64 bridge_residue_checked(u64 p, u64 ell) {
    u64 a = bridge_residue(p, ell);
    FracValue f = frac_power(alpha_param(2, static_cast<i64>(ell)), theta_param(0.5), p);
    WindowSpec w{static_cast<double>(a) / ell, static_cast<double>(a + 1) / ell};
    if (in_half_open(f, w) != Membership::In)
        throw std::logic_error("bridge_residue: fractional characterization mismatch at p = " +
                               std::to_string(p));
    return a;
}

// true iff {alpha p^theta} < p^(-lambda)
inline bool landau_indicator(const AlphaParam& alpha, const ThetaParam& theta, double lambda, u64 p) {
    if (!(lambda > 0.0)) throw std::invalid_argument("landau_indicator: lambda must be positive");
    FracValue f = frac_power(alpha, theta, p);

    // exact route for the sqrt form at lambda = 1/2:
    // frac < p^{-1/2}  <=>  u p <= v  or  (m v)^2 p > (u p - v)^2
    if (f.rep == FracValue::Rep::SqrtForm && lambda == 0.5) {
        const u64 u = static_cast<u64>(f.a_num), v = static_cast<u64>(f.a_den);
        const int ubits = 64 - __builtin_clzll(u);
        const int pbits = 64 - __builtin_clzll(p);
        if (ubits + pbits <= 63) {
            u64 up = u * p;
            if (up <= v) return true;
            u64 d = up - v;
            u64 mv = static_cast<u64>(f.int_part) * v;
            const int mvbits = mv ? 64 - __builtin_clzll(mv) : 0;
            const int dbits = 64 - __builtin_clzll(d);
            if (2 * mvbits + pbits <= 126 && 2 * dbits <= 126)
                return (u128)mv * mv * p > (u128)d * d;
        }
    }

    // screen: p^{-lambda} in double with a generous relative slack
    double t = std::pow(static_cast<double>(p), -lambda);
    double t_err = t * std::ldexp(1.0, -48);
    if (f.value - f.err > t + t_err) return false;
    if (f.value + f.err < t - t_err) return true;

    // mpfr ladder: compare directed enclosures of frac and p^-lambda at full
    // working precision
    for (int lvl = 1; lvl <= 2; ++lvl) {
        const mpfr_prec_t prec = detail::kPrecLadder[lvl];
        detail::MpfrValue tlo(prec), thi(prec), base(prec), ex(prec), flo(prec), fhi(prec);
        mpfr_set_ui(base, p, MPFR_RNDN);
        mpfr_set_d(ex, -lambda, MPFR_RNDN);
        mpfr_pow(tlo, base, ex, MPFR_RNDD);
        mpfr_pow(thi, base, ex, MPFR_RNDU);
        if (!detail::frac_enclosure_mpfr(f, prec, flo, fhi)) continue;
        if (mpfr_cmp(fhi, tlo) < 0) return true;
        if (mpfr_cmp(flo, thi) > 0) return false;
    }
    throw uncertain_error(p);
}

inline bool landau_indicator(double alpha, double theta, double lambda, u64 p) {
    return landau_indicator(alpha_param(alpha), theta_param(theta), lambda, p);
}

// star discrepancy D*_N of a sample in [0,1), exact sorted-sample formula
inline double star_discrepancy(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("star_discrepancy: empty sample");
    std::vector<double> xs(samples.begin(), samples.end());
    for (double x : xs)
        if (!(x >= 0.0 && x < 1.0))
            throw std::invalid_argument("star_discrepancy: samples must lie in [0, 1)");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double hi = (static_cast<double>(i) + 1.0) / n - xs[i];
        double lo = xs[i] - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

} // namespace exlab
