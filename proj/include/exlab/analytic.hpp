#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exlab/arith.hpp"
#include "exlab/quadrature.hpp"

namespace exlab {

using cplx = std::complex<double>;

// Parameters for the truncated-Perron machinery over one sub-window
// (xj, xj1] of (x, 2x]: the smoothing scales U+-, the Perron heights T0, T1,
// and the Dirichlet-polynomial support (m_lo, m_hi].
struct AnalyticParams {
    double alpha = 1.0;
    double theta = 0.5;
    u64 x = 0;
    double delta1 = 0.0;
    double delta = 1.0;
    double omega = 1.0;
    double n_L = 1.0;
    double Uminus = 0.0, Uplus = 0.0;
    double T0 = 0.0, T1 = 0.0;
    i64 m_lo = 0, m_hi = 0; // Dirichlet polynomial runs over m in (m_lo, m_hi]
};

inline AnalyticParams analytic_params(double alpha, double theta, u64 x, double delta1,
                                      double delta2, double omega, double n_L = 1.0,
                                      std::optional<std::pair<double, double>> sub_window = {}) {
    if (!(alpha > 0)) throw std::invalid_argument("analytic_params: alpha must be positive");
    if (!(theta >= 0 && theta <= 1)) throw std::invalid_argument("analytic_params: theta in [0,1]");
    if (!(delta1 >= 0 && delta1 < delta2 && delta2 <= 1))
        throw std::invalid_argument("analytic_params: need 0 <= delta1 < delta2 <= 1");
    if (!(omega >= 1)) throw std::invalid_argument("analytic_params: omega must be >= 1");
    if (x < 2) throw std::invalid_argument("analytic_params: x must be >= 2");
    if (!(alpha * std::pow(static_cast<double>(x), theta) >= 1.0))
        throw std::invalid_argument(
            "analytic_params: need alpha x^theta >= 1 (below that the window is the whole range "
            "and the Perron machinery is moot)");
    AnalyticParams ap;
    ap.alpha = alpha;
    ap.theta = theta;
    ap.x = x;
    ap.delta1 = delta1;
    ap.delta = delta2 - delta1;
    ap.omega = omega;
    ap.n_L = n_L;
    const double xd = static_cast<double>(x);
    const double M = alpha * std::pow(xd, theta);
    double lo = sub_window ? sub_window->first : xd;
    double hi = sub_window ? sub_window->second : 2.0 * xd;
    ap.Uminus = alpha * std::pow(lo, theta) / ap.delta;
    ap.Uplus = alpha * std::pow(hi, theta) / ap.delta;
    ap.T0 = M;
    ap.T1 = std::pow(alpha, 0.75) * std::pow(xd, (1.0 + 3.0 * theta) / 4.0) /
            (std::sqrt(n_L * ap.delta * omega) * std::log(xd));
    ap.m_lo = static_cast<i64>(std::floor(M / 3.0 - delta1));
    ap.m_hi = static_cast<i64>(std::floor(3.0 * M - delta1));
    return ap;
}

// L(s) = alpha^s * sum over m_lo < m <= m_hi of (m + delta1)^(-s)
inline cplx eval_L(cplx s, const AnalyticParams& ap) {
    if (ap.m_hi <= ap.m_lo) throw std::invalid_argument("eval_L: empty m-range");
    cplx sum = 0.0;
    for (i64 m = ap.m_lo + 1; m <= ap.m_hi; ++m) {
        double base = static_cast<double>(m) + ap.delta1;
        sum += std::exp(-s * std::log(base));
    }
    return std::exp(s * std::log(ap.alpha)) * sum;
}

// H(s) = (1 - (1 - 1/U)^s) / s, principal branch
inline cplx eval_H(cplx s, double U) {
    if (s == cplx(0.0, 0.0)) throw std::invalid_argument("eval_H: s must be nonzero");
    if (!(U >= 1.0)) throw std::invalid_argument("eval_H: U must be >= 1");
    const double base = 1.0 - 1.0 / U;
    if (base == 0.0) {
        if (s.real() <= 0.0) throw std::invalid_argument("eval_H: 0^s needs Re(s) > 0");
        return 1.0 / s;
    }
    return (1.0 - std::exp(s * std::log(base))) / s;
}

// F(s) = sum of p^(-s) over flagged primes of one sub-window
inline cplx eval_F(cplx s, std::span<const std::pair<u64, bool>> traces) {
    cplx sum = 0.0;
    for (const auto& [p, in_class] : traces) {
        if (!in_class) continue;
        sum += std::exp(-s * std::log(static_cast<double>(p)));
    }
    return sum;
}

struct MeanValueResult {
    double integral = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    std::size_t evals = 0;
};

// integral over [T', 2T'] of |L(1/2+it)|^2 against the envelope
// alpha T' + alpha^2 x^theta log(alpha x^theta)
inline MeanValueResult mean_value_check(double Tprime, const AnalyticParams& ap,
                                        double rel_tol = 1e-6, unsigned threads = 1) {
    if (!(Tprime > 0)) throw std::invalid_argument("mean_value_check: T' must be positive");
    if (ap.m_hi <= ap.m_lo) throw std::invalid_argument("mean_value_check: empty m-range");
    const std::size_t n = static_cast<std::size_t>(ap.m_hi - ap.m_lo);
    std::vector<double> lambda(n), coef(n);
    for (std::size_t i = 0; i < n; ++i) {
        double base = static_cast<double>(ap.m_lo + 1 + static_cast<i64>(i)) + ap.delta1;
        lambda[i] = std::log(base);
        coef[i] = 1.0 / std::sqrt(base);
    }
    // |L(1/2+it)|^2 = alpha * |sum coef * exp(-it lambda)|^2
    auto integrand = [&](double t) {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ph = t * lambda[i];
            re += coef[i] * std::cos(ph);
            im -= coef[i] * std::sin(ph);
        }
        return ap.alpha * (re * re + im * im);
    };
    const double period = 2.0 * M_PI / lambda.back();
    QuadResult q = integrate_adaptive(integrand, Tprime, 2.0 * Tprime, rel_tol, period, threads);
    const double M = ap.alpha * std::pow(static_cast<double>(ap.x), ap.theta);
    MeanValueResult r;
    r.integral = q.value;
    r.bound = ap.alpha * Tprime + ap.alpha * ap.alpha * std::pow(static_cast<double>(ap.x), ap.theta) *
                                      std::log(M);
    r.ratio = r.integral / r.bound;
    r.evals = q.evals;
    return r;
}

enum class TheoremId { Thm12, Thm13, Cor14, Cor15, Thm16, Cor17, Cor18 };

inline const char* theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::Thm12: return "Thm1.2";
        case TheoremId::Thm13: return "Thm1.3";
        case TheoremId::Cor14: return "Cor1.4";
        case TheoremId::Cor15: return "Cor1.5";
        case TheoremId::Thm16: return "Thm1.6";
        case TheoremId::Cor17: return "Cor1.7";
        case TheoremId::Cor18: return "Cor1.8";
    }
    return "?";
}

inline std::optional<TheoremId> theorem_from_name(const std::string& s) {
    for (TheoremId id : {TheoremId::Thm12, TheoremId::Thm13, TheoremId::Cor14, TheoremId::Cor15,
                         TheoremId::Thm16, TheoremId::Cor17, TheoremId::Cor18})
        if (s == theorem_name(id)) return id;
    return std::nullopt;
}

// Everything an error envelope might need; unset members stay NaN and are
// reported by name when a formula requires them.
struct EnvelopeParams {
    double x = nan("");
    double ell = nan("");
    double omega = nan("");
    double alpha = nan("");
    double theta = nan("");
    double delta = nan("");
    double lambda = nan("");
    double eps = nan("");
    double n_L = nan("");
    double log_dL = nan("");
    double class_ratio = nan(""); // |C| / |G|
    double b = nan("");           // number of conjugacy classes in C
};

struct SideCondition {
    std::string name;
    double lhs = 0.0, rhs = 0.0;
    bool satisfied = false;
};

struct BoundEnvelope {
    TheoremId id;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    std::vector<SideCondition> side_conditions;
};

namespace detail {
inline void need(std::initializer_list<std::pair<const char*, double>> req) {
    for (const auto& [name, v] : req)
        if (std::isnan(v))
            throw std::invalid_argument(std::string("bound_envelope: missing parameter ") + name);
}
} // namespace detail

// The cited error expression of each statement, evaluated with every implied
// constant set to 1 (natural logarithms); parameter-range side conditions are
// evaluated the same way and reported as flags.
inline BoundEnvelope bound_envelope(TheoremId id, const EnvelopeParams& p) {
    BoundEnvelope e;
    e.id = id;
    auto L = [](double x) { return std::log(x); };
    switch (id) {
        case TheoremId::Thm12: {
            detail::need({{"x", p.x}, {"alpha", p.alpha}, {"theta", p.theta}, {"delta", p.delta},
                             {"omega", p.omega}, {"n_L", p.n_L}, {"class_ratio", p.class_ratio}});
            double lx = L(p.x);
            double t1 = p.class_ratio * p.n_L * lx *
                        (std::sqrt(p.delta * p.omega) * std::pow(p.alpha, 0.25) / std::sqrt(p.n_L) *
                             std::pow(p.x, (3.0 + p.theta) / 4.0) +
                         p.delta * p.omega / std::sqrt(p.alpha) * std::pow(p.x, 1.0 - p.theta / 2.0) * lx);
            double t2 = std::sqrt(p.delta * p.n_L * p.omega) * std::pow(p.alpha, 0.25) *
                        std::pow(p.x, (1.0 + p.theta) / 4.0) * lx;
            double t3 = p.class_ratio * p.delta * p.x / (p.omega * lx);
            e.terms = {{"chebotarev", t1}, {"perron", t2}, {"window", t3}};
            e.value = t1 + t2 + t3;
            double lhs = std::pow(p.alpha, 0.25) * std::sqrt(p.omega * p.n_L / p.delta) * lx * lx;
            double rhs = std::pow(p.x, (1.0 - p.theta) / 4.0);
            e.side_conditions.push_back({"alpha^(1/4) (omega n_L/delta)^(1/2) log^2 x <= x^((1-theta)/4)",
                                         lhs, rhs, lhs <= rhs});
            break;
        }
        case TheoremId::Thm13: {
            detail::need({{"x", p.x}, {"ell", p.ell}, {"omega", p.omega}});
            double lx = L(p.x);
            double t1 = p.x / (p.omega * p.ell * lx);
            double t2 = std::sqrt(p.omega) * std::pow(p.ell, 1.25) * std::pow(p.x, 7.0 / 8.0) * lx;
            double t3 = p.omega * std::pow(p.ell, 3.5) * std::pow(p.x, 0.75) * lx * lx;
            e.terms = {{"main-loss", t1}, {"chebotarev", t2}, {"conductor", t3}};
            e.value = t1 + t2 + t3;
            double rhs = std::pow(p.x, 1.0 / 18.0) * std::pow(p.omega, -2.0 / 9.0) * std::pow(lx, -8.0 / 9.0);
            e.side_conditions.push_back({"ell <= x^(1/18) omega^(-2/9) log^(-8/9) x", p.ell, rhs,
                                         p.ell <= rhs});
            break;
        }
        case TheoremId::Cor14: {
            detail::need({{"x", p.x}});
            e.value = std::pow(p.x, 17.0 / 18.0) * std::pow(L(p.x), -1.0 / 9.0);
            e.terms = {{"bound", e.value}};
            break;
        }
        case TheoremId::Cor15: {
            detail::need({{"x", p.x}, {"ell", p.ell}, {"omega", p.omega}});
            double lx = L(p.x);
            double t1 = p.x / (p.ell * p.ell * p.omega * lx);
            double t2 = std::sqrt(p.omega) * std::pow(p.x, 7.0 / 8.0) * lx / std::pow(p.ell, 0.25);
            double t3 = p.omega * std::pow(p.ell, 1.5) * std::pow(p.x, 0.75) * lx * lx;
            e.terms = {{"main-loss", t1}, {"chebotarev", t2}, {"conductor", t3}};
            e.value = t1 + t2 + t3;
            double rhs = std::pow(p.x, 1.0 / 14.0) * std::pow(lx, -8.0 / 7.0) * std::pow(p.omega, -2.0 / 7.0);
            e.side_conditions.push_back({"ell <= x^(1/14) log^(-8/7) x omega^(-2/7)", p.ell, rhs,
                                         p.ell <= rhs});
            break;
        }
        case TheoremId::Thm16: {
            detail::need({{"x", p.x}, {"lambda", p.lambda}, {"omega", p.omega}, {"alpha", p.alpha},
                             {"theta", p.theta}, {"class_ratio", p.class_ratio}, {"n_L", p.n_L},
                             {"log_dL", p.log_dL}});
            double lx = L(p.x);
            double t1 = p.class_ratio * std::pow(p.x, 1.0 - p.lambda) / (p.omega * lx);
            double t2 = p.omega * std::sqrt(p.alpha) * std::pow(p.x, p.theta / 2.0) * p.log_dL * lx * lx * lx;
            double t3 = p.class_ratio * std::sqrt(p.alpha) * std::pow(p.x, (1.0 + p.theta) / 2.0) *
                        lx * lx * lx * (p.log_dL + p.n_L * lx) *
                        (p.omega * p.omega +
                         p.omega * std::pow(p.x, 0.5 - p.theta - p.lambda) / std::sqrt(p.alpha));
            e.terms = {{"main-loss", t1}, {"conductor", t2}, {"chebotarev", t3}};
            e.value = t1 + t2 + t3;
            e.side_conditions.push_back({"omega >= 1", p.omega, 1.0, p.omega >= 1.0});
            break;
        }
        case TheoremId::Cor17: {
            detail::need({{"x", p.x}, {"eps", p.eps}, {"omega", p.omega},
                             {"class_ratio", p.class_ratio}, {"n_L", p.n_L}, {"log_dL", p.log_dL}});
            double lx = L(p.x);
            double t1 = p.class_ratio * std::pow(p.x, 0.75 + p.eps) / (p.omega * lx);
            double t2 = p.omega * std::pow(p.x, 0.25) * p.log_dL * lx * lx * lx;
            double t3 = p.class_ratio * p.omega * p.omega * std::pow(p.x, 0.75) * lx * lx * lx *
                        (p.log_dL + p.n_L * lx);
            e.terms = {{"main-loss", t1}, {"conductor", t2}, {"chebotarev", t3}};
            e.value = t1 + t2 + t3;
            break;
        }
        case TheoremId::Cor18: {
            detail::need({{"x", p.x}, {"delta", p.delta}, {"omega", p.omega}, {"n_L", p.n_L},
                             {"class_ratio", p.class_ratio}});
            double lx = L(p.x);
            double t1 = std::sqrt(p.delta * p.omega * p.n_L) * std::pow(p.x, 7.0 / 8.0) * lx;
            double t2 = p.n_L * p.delta * p.omega * std::pow(p.x, 0.75) * lx * lx;
            double t3 = p.delta * p.x / (p.omega * lx);
            e.terms = {{"chebotarev", t1}, {"conductor", t2}, {"main-loss", t3}};
            e.value = p.class_ratio * (t1 + t2 + t3);
            break;
        }
    }
    return e;
}

} // namespace exlab
