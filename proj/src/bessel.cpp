// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include "gpue/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gpue/errors.hpp"

namespace gpue {

namespace {

constexpr int kMaxSeriesTerms = 60;

} // namespace

double bessel_i0_series(double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= kMaxSeriesTerms; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term <= 1e-17 * sum) {
            break;
        }
    }
    return sum;
}

namespace detail {

double k0_ascending_series(double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0;
    double i0 = 1.0;
    double tail = 0.0;
    double harmonic = 0.0;
    for (int k = 1; k <= kMaxSeriesTerms; ++k) {
        term *= q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        tail += term * harmonic;
        if (term * harmonic <= 1e-17 * tail) {
            break;
        }
    }
    return -(std::log(0.5 * x) + std::numbers::egamma) * i0 + tail;
}

double k0_scaled_integral(double x)
{
    // The integrand is a Gaussian of width 1/sqrt(x) near t = 0 and is
    // analytic in the strip |Im t| < pi/2; both bound the step.
    const double h = std::min(0.1, 0.5 / std::sqrt(x));
    auto f = [x](double t) {
        const double s = std::sinh(0.5 * t);
        return std::exp(-2.0 * x * s * s);
    };
    double sum = 0.5;
    for (int k = 1; k < 100000; ++k) {
        const double v = f(k * h);
        sum += v;
        if (v <= 1e-18 * sum) {
            break;
        }
    }
    return h * sum;
}

} // namespace detail

double bessel_k0_scaled(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("bessel_k0: argument must be positive");
    }
    if (x <= kBesselK0Seam) {
        return std::exp(x) * detail::k0_ascending_series(x);
    }
    return detail::k0_scaled_integral(x);
}

double bessel_k0(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("bessel_k0: argument must be positive");
    }
    if (x <= kBesselK0Seam) {
        return detail::k0_ascending_series(x);
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    return std::exp(-x) * detail::k0_scaled_integral(x);
}

} // namespace gpue
