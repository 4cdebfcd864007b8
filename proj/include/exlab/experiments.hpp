#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "exlab/analytic.hpp"
#include "exlab/curve.hpp"
#include "exlab/frac.hpp"
#include "exlab/gl2.hpp"
#include "exlab/parallel.hpp"
#include "exlab/sieve.hpp"
#include "exlab/trace.hpp"

namespace exlab {

// Shared state for a batch of experiments: per-curve trace caches and the
// worker count. Observed counts are bit-identical across thread counts.
class Session {
public:
    explicit Session(unsigned threads = default_threads()) : threads_(threads) {}
    unsigned threads() const { return threads_; }
    void set_threads(unsigned t) { threads_ = t ? t : 1; }

    TraceCache& cache_for(const CurveQ& e) {
        std::lock_guard<std::mutex> lk(mu_);
        auto& slot = caches_[e.label];
        if (!slot) slot = std::make_unique<TraceCache>();
        return *slot;
    }

private:
    unsigned threads_;
    std::mutex mu_;
    std::map<std::string, std::unique_ptr<TraceCache>> caches_;
};

struct CountReport {
    std::string statement_id;
    u64 window_lo = 0, window_hi = 0;
    i64 observed = 0;
    double main_term = 0.0;
    double envelope = 0.0;
    double sigma_stat = 0.0;
    double z = 0.0;
    std::vector<SideCondition> side_conditions;
    std::map<std::string, double> extras;
    std::vector<u64> bad_primes_in_range;
};

struct HistogramReport {
    std::string statement_id;
    std::vector<double> bin_edges;
    std::vector<double> observed_mass;
    std::vector<double> reference_mass;
    u64 samples = 0;
    double ks = 0.0;
    double chi2 = 0.0;
};

// semicircle measure of [a, b]
inline double st_measure(double a, double b) {
    if (!(a >= -1.0 && a <= b && b <= 1.0))
        throw std::invalid_argument("st_measure: need -1 <= a <= b <= 1");
    auto prim = [](double t) { return std::asin(t) + t * std::sqrt(1.0 - t * t); };
    return (prim(b) - prim(a)) / M_PI;
}

namespace detail {

inline void finish_binomial(CountReport& r, double n_samples, double q) {
    r.sigma_stat = q > 0.0 && q < 1.0 ? std::sqrt(n_samples * q * (1.0 - q)) : 0.0;
    r.z = r.sigma_stat > 0.0 ? (static_cast<double>(r.observed) - r.main_term) / r.sigma_stat
                             : std::numeric_limits<double>::quiet_NaN();
}

inline std::vector<u64> good_primes_in(const CurveQ& e, u64 lo, u64 hi, unsigned threads,
                                       std::vector<u64>* bad_seen = nullptr) {
    std::vector<u64> primes = sieve_range(lo, hi, threads);
    std::vector<u64> good;
    good.reserve(primes.size());
    for (u64 p : primes) {
        if (e.is_bad(p)) {
            if (bad_seen) bad_seen->push_back(p);
            continue;
        }
        good.push_back(p);
    }
    return good;
}

// one-sample Kolmogorov-Smirnov distance of sorted samples against a CDF
template <class Cdf>
double ks_distance_sorted(const std::vector<double>& xs, Cdf&& cdf) {
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double F = cdf(xs[i]);
        d = std::max(d, std::max(F - static_cast<double>(i) / n,
                                 (static_cast<double>(i) + 1.0) / n - F));
    }
    return d;
}

inline double chi2_stat(const std::vector<double>& observed_mass,
                        const std::vector<double>& reference_mass, u64 n) {
    double chi2 = 0.0;
    for (std::size_t i = 0; i < observed_mass.size(); ++i) {
        double expd = reference_mass[i] * static_cast<double>(n);
        if (expd <= 0.0) continue;
        double diff = observed_mass[i] * static_cast<double>(n) - expd;
        chi2 += diff * diff / expd;
    }
    return chi2;
}

} // namespace detail

// #{x < p <= 2x good : a_p == [2 sqrt(p)] mod ell} against main term pi_w/ell
inline CountReport joint_count(const CurveQ& e, u64 ell, u64 x, double omega, Session& s) {
    if (x < 4) throw std::invalid_argument("joint_count: x must be >= 4");
    if (e.is_bad(ell))
        throw std::invalid_argument("joint_count: ell divides the model discriminant of " + e.label);
    CountReport r;
    r.statement_id = "joint";
    r.window_lo = x;
    r.window_hi = 2 * x;
    std::vector<u64> good = detail::good_primes_in(e, x, 2 * x, s.threads(), &r.bad_primes_in_range);
    std::vector<i64> aps = traces_for(e, good, s.cache_for(e), s.threads());
    const u64 nblocks = (good.size() + 4095) / 4096;
    std::vector<i64> partial(nblocks, 0);
    parallel_blocks(good.size(), 4096, s.threads(), [&](u64 b, u64 lo, u64 hi) {
        i64 c = 0;
        for (u64 i = lo; i < hi; ++i) {
            i64 m = aps[i] % static_cast<i64>(ell);
            if (m < 0) m += static_cast<i64>(ell);
            if (static_cast<u64>(m) == bridge_residue(good[i], ell)) ++c;
        }
        partial[b] = c;
    });
    for (i64 c : partial) r.observed += c;
    const double n = static_cast<double>(good.size());
    r.main_term = n / static_cast<double>(ell);
    EnvelopeParams ep;
    ep.x = static_cast<double>(x);
    ep.ell = static_cast<double>(ell);
    ep.omega = omega;
    BoundEnvelope env = bound_envelope(TheoremId::Thm13, ep);
    r.envelope = env.value;
    r.side_conditions = env.side_conditions;
    detail::finish_binomial(r, n, 1.0 / static_cast<double>(ell));
    r.extras["window_good_primes"] = n;
    return r;
}

// #{x < p <= 2x good : a_p == [2 sqrt(p)] == 0 mod ell} against pi_w/ell^2
inline CountReport joint_zero_count(const CurveQ& e, u64 ell, u64 x, double omega, Session& s) {
    if (x < 4) throw std::invalid_argument("joint_zero_count: x must be >= 4");
    if (e.is_bad(ell))
        throw std::invalid_argument("joint_zero_count: ell divides the model discriminant of " +
                                    e.label);
    CountReport r;
    r.statement_id = "jointzero";
    r.window_lo = x;
    r.window_hi = 2 * x;
    std::vector<u64> good = detail::good_primes_in(e, x, 2 * x, s.threads(), &r.bad_primes_in_range);
    std::vector<i64> aps = traces_for(e, good, s.cache_for(e), s.threads());
    for (std::size_t i = 0; i < good.size(); ++i) {
        if (aps[i] % static_cast<i64>(ell) == 0 && bridge_residue(good[i], ell) == 0) ++r.observed;
    }
    const double n = static_cast<double>(good.size());
    r.main_term = n / static_cast<double>(ell * ell);
    EnvelopeParams ep;
    ep.x = static_cast<double>(x);
    ep.ell = static_cast<double>(ell);
    ep.omega = omega;
    BoundEnvelope env = bound_envelope(TheoremId::Cor15, ep);
    r.envelope = env.value;
    r.side_conditions = env.side_conditions;
    detail::finish_binomial(r, n, 1.0 / static_cast<double>(ell * ell));
    r.extras["window_good_primes"] = n;
    return r;
}

// extremal primes over [lo, hi] of one sign; the conjectured counting
// function (8/(3 pi)) t^(1/4)/log t is differenced at the endpoints and
// halved per sign (the CM shape (2/(3 pi)) t^(3/4)/log t is reported for
// declared-CM curves but carries no gate)
inline CountReport extremal_count(const CurveQ& e, u64 lo, u64 hi, ExtremalStatus sign, Session& s) {
    if (sign == ExtremalStatus::No) throw std::invalid_argument("extremal_count: sign must be +/-");
    if (lo < 2) lo = 2;
    if (hi < lo) throw std::invalid_argument("extremal_count: empty range");
    CountReport r;
    r.statement_id = sign == ExtremalStatus::Plus ? "extremal+" : "extremal-";
    r.window_lo = lo;
    r.window_hi = hi;
    std::vector<u64> good = detail::good_primes_in(e, lo - 1, hi, s.threads(), &r.bad_primes_in_range);
    std::vector<i64> aps = traces_for(e, good, s.cache_for(e), s.threads());
    for (std::size_t i = 0; i < good.size(); ++i) {
        i64 edge = static_cast<i64>(floor_two_sqrt(good[i]));
        if (sign == ExtremalStatus::Plus ? aps[i] == edge : aps[i] == -edge) ++r.observed;
    }
    auto count_fn = [&](double t) {
        double c = e.declared_cm ? 2.0 / (3.0 * M_PI) : 8.0 / (3.0 * M_PI);
        double ex = e.declared_cm ? 0.75 : 0.25;
        return c * std::pow(t, ex) / std::log(t);
    };
    const double n = static_cast<double>(good.size());
    r.main_term = (count_fn(static_cast<double>(hi)) - count_fn(static_cast<double>(lo))) / 2.0;
    EnvelopeParams ep;
    ep.x = static_cast<double>(hi) / 2.0;
    BoundEnvelope env = bound_envelope(TheoremId::Cor14, ep);
    r.envelope = env.value;
    if (n > 0 && r.main_term > 0) detail::finish_binomial(r, n, r.main_term / n);
    r.extras["window_good_primes"] = n;
    return r;
}

// #{p <= x good : a_p = t}; the conjectured shape x^(1/2)/log x has an
// unspecified constant, so the report carries the raw count plus the ratio
inline CountReport lang_trotter_count(const CurveQ& e, i64 t, u64 x, Session& s) {
    if (x < 3) throw std::invalid_argument("lang_trotter_count: x must be >= 3");
    CountReport r;
    r.statement_id = "langtrotter";
    r.window_lo = 0;
    r.window_hi = x;
    std::vector<u64> good = detail::good_primes_in(e, 1, x, s.threads(), &r.bad_primes_in_range);
    std::vector<i64> aps = traces_for(e, good, s.cache_for(e), s.threads());
    for (std::size_t i = 0; i < good.size(); ++i)
        if (aps[i] == t) ++r.observed;
    const double shape = std::sqrt(static_cast<double>(x)) / std::log(static_cast<double>(x));
    r.main_term = shape;
    const double n = static_cast<double>(good.size());
    if (n > 0) detail::finish_binomial(r, n, std::min(1.0, shape / n));
    r.extras["normalized_ratio"] = static_cast<double>(r.observed) / shape;
    r.extras["window_good_primes"] = n;
    return r;
}

// frequencies of a_p mod ell over good p <= x against the trace-fiber masses
inline HistogramReport residue_histogram(const CurveQ& e, u64 ell, u64 x, Session& s) {
    HistogramReport h;
    h.statement_id = "residues";
    std::vector<u64> good = detail::good_primes_in(e, 1, x, s.threads());
    std::vector<i64> aps = traces_for(e, good, s.cache_for(e), s.threads());
    std::vector<u64> counts(ell, 0);
    for (i64 a : aps) {
        i64 m = a % static_cast<i64>(ell);
        if (m < 0) m += static_cast<i64>(ell);
        ++counts[static_cast<u64>(m)];
    }
    h.samples = good.size();
    h.bin_edges.resize(ell + 1);
    h.observed_mass.resize(ell);
    h.reference_mass.resize(ell);
    for (u64 a = 0; a <= ell; ++a) h.bin_edges[a] = static_cast<double>(a);
    for (u64 a = 0; a < ell; ++a) {
        h.observed_mass[a] = h.samples ? static_cast<double>(counts[a]) / h.samples : 0.0;
        h.reference_mass[a] = trace_fiber(ell, a).proportion.to_double();
    }
    // discrete KS over the residue CDF plus the plain chi-square statistic
    double cum_o = 0.0, cum_r = 0.0, ks = 0.0;
    for (u64 a = 0; a < ell; ++a) {
        cum_o += h.observed_mass[a];
        cum_r += h.reference_mass[a];
        ks = std::max(ks, std::fabs(cum_o - cum_r));
    }
    h.ks = ks;
    h.chi2 = detail::chi2_stat(h.observed_mass, h.reference_mass, h.samples);
    return h;
}

// histogram of a_p / (2 sqrt(p)) over good p <= x against the semicircle
// measure; ks is the exact one-sample statistic on the unbinned normalized
// traces
inline HistogramReport sato_tate_histogram(const CurveQ& e, u64 x, unsigned bins, Session& s) {
    if (bins < 1) throw std::invalid_argument("sato_tate_histogram: bins must be >= 1");
    HistogramReport h;
    h.statement_id = "satotate";
    std::vector<u64> good = detail::good_primes_in(e, 1, x, s.threads());
    std::vector<i64> aps = traces_for(e, good, s.cache_for(e), s.threads());
    std::vector<double> normalized(good.size());
    for (std::size_t i = 0; i < good.size(); ++i)
        normalized[i] = static_cast<double>(aps[i]) / (2.0 * std::sqrt(static_cast<double>(good[i])));
    h.samples = normalized.size();
    h.bin_edges.resize(bins + 1);
    for (unsigned b = 0; b <= bins; ++b)
        h.bin_edges[b] = -1.0 + 2.0 * static_cast<double>(b) / bins;
    h.observed_mass.assign(bins, 0.0);
    h.reference_mass.resize(bins);
    for (double v : normalized) {
        int b = static_cast<int>((v + 1.0) * 0.5 * bins);
        if (b < 0) b = 0;
        if (b >= static_cast<int>(bins)) b = static_cast<int>(bins) - 1;
        h.observed_mass[static_cast<unsigned>(b)] += 1.0;
    }
    for (unsigned b = 0; b < bins; ++b) {
        if (h.samples) h.observed_mass[b] /= static_cast<double>(h.samples);
        h.reference_mass[b] = st_measure(h.bin_edges[b], h.bin_edges[b + 1]);
    }
    std::sort(normalized.begin(), normalized.end());
    h.ks = detail::ks_distance_sorted(normalized, [](double t) {
        if (t <= -1.0) return 0.0;
        if (t >= 1.0) return 1.0;
        return st_measure(-1.0, t);
    });
    h.chi2 = detail::chi2_stat(h.observed_mass, h.reference_mass, h.samples);
    return h;
}

struct BalogReport {
    u64 n = 0;
    double discrepancy = 0.0;
    double ks = 0.0;
};

// uniformity of {alpha p^theta} over all p <= x: star discrepancy, which for
// the anchored uniform CDF coincides with the one-sample KS statistic
inline BalogReport balog_report(const AlphaParam& a, const ThetaParam& t, u64 x,
                                unsigned threads = default_threads()) {
    std::vector<u64> primes = sieve_range(1, x, threads);
    std::vector<double> vals(primes.size());
    parallel_blocks(primes.size(), 4096, threads, [&](u64, u64 lo, u64 hi) {
        for (u64 i = lo; i < hi; ++i) vals[i] = frac_power(a, t, primes[i]).value;
    });
    BalogReport r;
    r.n = vals.size();
    r.discrepancy = star_discrepancy(vals);
    r.ks = r.discrepancy;
    return r;
}

inline BalogReport balog_report(double alpha, double theta, u64 x,
                                unsigned threads = default_threads()) {
    return balog_report(alpha_param(alpha), theta_param(theta), x, threads);
}

// #{p <= x : {alpha p^theta} < p^(-lambda)} against sum over p <= x of p^(-lambda)
inline CountReport landau_count(const AlphaParam& a, const ThetaParam& t, double lambda, u64 x,
                                unsigned threads = default_threads()) {
    if (lambda < 0.0) throw std::invalid_argument("landau_count: lambda must be >= 0");
    CountReport r;
    r.statement_id = "landau";
    r.window_lo = 0;
    r.window_hi = x;
    std::vector<u64> primes = sieve_range(1, x, threads);
    const u64 nblocks = (primes.size() + 4095) / 4096;
    std::vector<i64> pcount(nblocks, 0);
    std::vector<double> psum(nblocks, 0.0);
    parallel_blocks(primes.size(), 4096, threads, [&](u64 b, u64 lo, u64 hi) {
        i64 c = 0;
        double sum = 0.0;
        for (u64 i = lo; i < hi; ++i) {
            if (lambda > 0.0 ? landau_indicator(a, t, lambda, primes[i])
                             : true) // lambda = 0: {.} < 1 always holds
                ++c;
            sum += std::pow(static_cast<double>(primes[i]), -lambda);
        }
        pcount[b] = c;
        psum[b] = sum;
    });
    double main = 0.0;
    for (u64 b = 0; b < nblocks; ++b) {
        r.observed += pcount[b];
        main += psum[b];
    }
    r.main_term = main;
    const double n = static_cast<double>(primes.size());
    if (n > 0) detail::finish_binomial(r, n, std::min(1.0, main / n));
    EnvelopeParams ep;
    ep.x = static_cast<double>(x);
    ep.lambda = lambda;
    ep.omega = 1.0;
    ep.alpha = static_cast<double>(a.num) / static_cast<double>(a.den);
    ep.theta = t.value;
    ep.class_ratio = 1.0;
    ep.n_L = 1.0;    // no field extension in the pure fractional-part run
    ep.log_dL = 0.0;
    BoundEnvelope env = bound_envelope(TheoremId::Thm16, ep);
    r.envelope = env.value;
    r.side_conditions = env.side_conditions;
    r.extras["primes_up_to_x"] = n;
    return r;
}

inline CountReport landau_count(double alpha, double theta, double lambda, u64 x,
                                unsigned threads = default_threads()) {
    return landau_count(alpha_param(alpha), theta_param(theta), lambda, x, threads);
}

} // namespace exlab
