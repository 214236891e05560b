// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace gpue {

/// Branch point between the ascending series and the large-argument form.
inline constexpr double kBesselK0Seam = 2.0;

/// Modified Bessel function of the second kind, order zero. Relative error
/// below 1e-10 on [1e-8, 700]; underflows to 0 beyond ~745. Throws
/// DomainError for x <= 0 (K0 diverges logarithmically at the origin).
double bessel_k0(double x);

/// e^x K0(x), finite for all x > 0.
double bessel_k0_scaled(double x);

/// Modified Bessel function of the first kind, order zero, by power series.
/// Accurate for |x| <= 2, which is all the K0 series needs.
double bessel_i0_series(double x);

namespace detail {

/// -(ln(x/2) + gamma) I0(x) + sum_k (x^2/4)^k / (k!)^2 H_k, H_k the harmonic numbers.
double k0_ascending_series(double x);

/// e^x K0(x) = int_0^inf exp(-x (cosh t - 1)) dt by the trapezoidal rule,
/// which converges geometrically for this entire, rapidly decaying integrand.
double k0_scaled_integral(double x);

} // namespace detail

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Change of variables for a semi-infinite range [a, inf).
enum class TailMap {
    rational,    ///< x = a + t / (1 - t)
    exponential, ///< x = a - ln(1 - t); exact for integrands decaying like e^{-x}
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    long max_evaluations = 2'000'000;
    /// Panels narrower than this (in the mapped variable) are never bisected.
    double min_panel_width = 1e-14;
    TailMap tail_map = TailMap::rational;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature with global bisection of the
/// worst panel. Either limit may be infinite; infinite ranges are mapped onto
/// a finite interval first. Stops when the summed error estimate is below
/// max(abs_tol, rel_tol * |value|). Throws ConvergenceError (carrying the best
/// estimate) when the evaluation budget runs out or no panel can be split.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

/// Convenience overload: absolute tolerance `tol`, relative tolerance 0.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol);

} // namespace gpue
