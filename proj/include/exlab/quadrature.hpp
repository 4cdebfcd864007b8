#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "exlab/errors.hpp"
#include "exlab/parallel.hpp"

namespace exlab {

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    std::size_t evals = 0;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss (QUADPACK qk15 nodes)
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> qk15(F&& f, double a, double b, std::size_t& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double x = h * kXgk[i];
        double f1 = f(c - x), f2 = f(c + x);
        kron += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
    }
    evals += 15;
    kron *= h;
    gauss *= h;
    return {kron, std::fabs(kron - gauss)};
}

template <class F>
void refine(F&& f, double a, double b, double tol, int depth, double& sum, double& err_sum,
            std::size_t& evals, std::size_t max_evals) {
    auto [v, e] = qk15(f, a, b, evals);
    if (e <= tol || depth >= 28) {
        sum += v;
        err_sum += e;
        return;
    }
    if (evals > max_evals) throw quadrature_error(e, tol, evals);
    double mid = 0.5 * (a + b);
    refine(f, a, mid, 0.5 * tol, depth + 1, sum, err_sum, evals, max_evals);
    refine(f, mid, b, 0.5 * tol, depth + 1, sum, err_sum, evals, max_evals);
}

} // namespace detail

// Adaptive Gauss-Kronrod over [a, b]. The interval is first cut into panels
// no wider than max_panel_width (one period of the fastest oscillation), each
// panel then bisected until its error allotment is met. Panels run in
// parallel; the final sum is accumulated in panel order, so results do not
// depend on the thread count.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double rel_tol, double max_panel_width,
                              unsigned threads = 1, std::size_t max_evals = 50'000'000) {
    if (!(b > a)) throw std::invalid_argument("integrate_adaptive: need b > a");
    if (!(rel_tol > 0)) throw std::invalid_argument("integrate_adaptive: rel_tol must be positive");
    const double width = b - a;
    double panel_w = max_panel_width > 0 ? std::min(max_panel_width, width) : width;
    const std::size_t n_panels = static_cast<std::size_t>(std::ceil(width / panel_w));
    panel_w = width / static_cast<double>(n_panels);

    // first pass: rough panel values to apportion the tolerance
    std::vector<double> rough(n_panels, 0.0);
    std::vector<std::size_t> evals_per(n_panels, 0);
    parallel_blocks(n_panels, 1, threads, [&](u64 i, u64, u64) {
        std::size_t ev = 0;
        auto [v, e] = detail::qk15(f, a + i * panel_w, a + (i + 1) * panel_w, ev);
        rough[i] = std::fabs(v);
        evals_per[i] = ev;
    });
    double rough_total = 0.0;
    for (double r : rough) rough_total += r;
    if (rough_total == 0.0) rough_total = 1.0;

    std::vector<double> vals(n_panels, 0.0), errs(n_panels, 0.0);
    parallel_blocks(n_panels, 1, threads, [&](u64 i, u64, u64) {
        double tol = rel_tol * rough_total * std::max(rough[i] / rough_total, 1.0 / n_panels);
        double sum = 0.0, err = 0.0;
        std::size_t ev = evals_per[i];
        detail::refine(f, a + i * panel_w, a + (i + 1) * panel_w, 0.5 * tol, 0, sum, err, ev,
                       max_evals / n_panels + 1000);
        vals[i] = sum;
        errs[i] = err;
        evals_per[i] = ev;
    });

    QuadResult out;
    for (std::size_t i = 0; i < n_panels; ++i) {
        out.value += vals[i];
        out.err_est += errs[i];
        out.evals += evals_per[i];
    }
    if (out.err_est > rel_tol * std::max(std::fabs(out.value), 1e-300) * 4.0 + 1e-300) {
        // tolerate a mildly conservative error estimator before giving up
        if (out.err_est > 50.0 * rel_tol * std::fabs(out.value))
            throw quadrature_error(out.err_est / std::max(std::fabs(out.value), 1e-300), rel_tol,
                                   out.evals);
    }
    return out;
}

} // namespace exlab
