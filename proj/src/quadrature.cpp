// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "gpue/errors.hpp"
#include "gpue/specfun.hpp"

namespace gpue {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// nodes are the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class G>
Panel gauss_kronrod(const G& g, double lo, double hi)
{
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = g(centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = g(centre - dx);
        f2[j] = g(centre + dx);
        kronrod += kWgk[j] * (f1[j] + f2[j]);
        abs_sum += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * (f1[j] + f2[j]);
        }
    }
    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double result = kronrod * half;
    abs_sum *= std::abs(half);
    asc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) {
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * abs_sum, err);
    }
    if (!std::isfinite(result) || !std::isfinite(err)) {
        throw ConvergenceError("integrate: integrand is not finite on the range", result, err);
    }
    return {lo, hi, result, err};
}

template <class G>
QuadratureResult adaptive(const G& g, double lo, double hi, const QuadratureOptions& opt)
{
    std::priority_queue<Panel> open;
    std::vector<Panel> frozen;
    QuadratureResult out;

    Panel first = gauss_kronrod(g, lo, hi);
    out.evaluations = 15;
    double value = first.value;
    double error = first.error;
    open.push(first);

    auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(value)); };

    while (error > target()) {
        if (out.evaluations >= opt.max_evaluations) {
            throw ConvergenceError("integrate: evaluation budget exhausted", value, error);
        }
        if (open.empty()) {
            throw ConvergenceError("integrate: panels reached the minimum width", value, error);
        }
        Panel worst = open.top();
        open.pop();
        if (worst.hi - worst.lo < opt.min_panel_width) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Panel left = gauss_kronrod(g, worst.lo, mid);
        const Panel right = gauss_kronrod(g, mid, worst.hi);
        out.evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        open.push(left);
        open.push(right);
    }

    // Re-sum from the panels to shed the drift of the running updates.
    value = 0.0;
    error = 0.0;
    for (const Panel& p : frozen) {
        value += p.value;
        error += p.error;
    }
    while (!open.empty()) {
        value += open.top().value;
        error += open.top().error;
        open.pop();
    }
    out.value = value;
    out.error_estimate = error;
    return out;
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& options)
{
    if (std::isnan(a) || std::isnan(b)) {
        throw DomainError("integrate: NaN limit");
    }
    if (!(options.abs_tol > 0.0 || options.rel_tol > 0.0)) {
        throw DomainError("integrate: tolerance must be positive");
    }
    if (a == b) {
        return {};
    }
    if (a > b) {
        QuadratureResult r = integrate(f, b, a, options);
        r.value = -r.value;
        return r;
    }

    // Zero integrand values short-circuit the Jacobian so that f(x) = 0 at an
    // overflowing abscissa never produces 0 * inf.
    auto weighted = [&f](double x, double jac) {
        const double v = f(x);
        return v == 0.0 ? 0.0 : v * jac;
    };

    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);
    if (!lo_inf && !hi_inf) {
        return adaptive([&](double x) { return f(x); }, a, b, options);
    }
    if (lo_inf && hi_inf) {
        // x = t / (1 - t^2) on (-1, 1)
        return adaptive(
            [&](double t) {
                const double d = 1.0 - t * t;
                return weighted(t / d, (1.0 + t * t) / (d * d));
            },
            -1.0, 1.0, options);
    }
    const double anchor = lo_inf ? b : a;
    const double dir = lo_inf ? -1.0 : 1.0;
    if (options.tail_map == TailMap::exponential) {
        return adaptive(
            [&](double t) {
                const double d = 1.0 - t;
                return weighted(anchor - dir * std::log(d), 1.0 / d);
            },
            0.0, 1.0, options);
    }
    return adaptive(
        [&](double t) {
            const double d = 1.0 - t;
            return weighted(anchor + dir * t / d, 1.0 / (d * d));
        },
        0.0, 1.0, options);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol)
{
    QuadratureOptions options;
    options.abs_tol = tol;
    options.rel_tol = 0.0;
    return integrate(f, a, b, options);
}

} // namespace gpue
