// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "gpue/errors.hpp"
#include "gpue/specfun.hpp"

using namespace gpue;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct OraclePoint {
    double x;
    double k0;
};

constexpr OraclePoint kK0Oracle[] = {
#include "oracles/k0_oracle.inc"
};

// Hankel asymptotic expansion, truncated before its smallest term; for x = 30
// the truncation error is far below binary64 resolution.
double k0_asymptotic(double x)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        const double next = -term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (std::abs(next) > std::abs(term)) {
            break;
        }
        term = next;
        sum += term;
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * sum;
}

} // namespace

TEST_CASE("K0 against the 30-digit oracle table")
{
    static_assert(std::size(kK0Oracle) == 200);
    double worst = 0.0;
    for (const OraclePoint& p : kK0Oracle) {
        const double rel = std::abs(bessel_k0(p.x) - p.k0) / p.k0;
        worst = std::max(worst, rel);
        CHECK_MESSAGE(rel <= 1e-10, "x = " << p.x);
    }
    MESSAGE("max relative error " << worst);
}

TEST_CASE("K0 branches agree at the seam")
{
    const double x = kBesselK0Seam;
    const double series = detail::k0_ascending_series(x);
    const double integral = std::exp(-x) * detail::k0_scaled_integral(x);
    CHECK(std::abs(series - integral) / series <= 1e-11);
    // Both sides of the seam through the public entry point.
    const double below = bessel_k0(std::nextafter(x, 0.0));
    const double above = bessel_k0(std::nextafter(x, 3.0));
    CHECK(std::abs(below - above) / series <= 1e-11);
}

TEST_CASE("K0 large argument against the asymptotic series")
{
    for (double x : {30.0, 50.0, 200.0}) {
        CHECK(std::abs(bessel_k0(x) - k0_asymptotic(x)) / k0_asymptotic(x) <= 1e-12);
    }
    CHECK(bessel_k0_scaled(500.0) == doctest::Approx(k0_asymptotic(500.0) * std::exp(500.0)).epsilon(1e-12));
    CHECK(bessel_k0(800.0) == 0.0);
    CHECK(bessel_k0(kInf) == 0.0);
}

TEST_CASE("K0 small argument")
{
    for (double x : {1e-8, 1e-6}) {
        const double leading = -std::log(x / 2.0) - std::numbers::egamma;
        CHECK(std::abs(bessel_k0(x) - leading) <= 1e-10);
    }
}

TEST_CASE("K0 domain")
{
    CHECK_THROWS_AS(static_cast<void>(bessel_k0(0.0)), DomainError);
    CHECK_THROWS_AS(static_cast<void>(bessel_k0(-1.0)), DomainError);
    CHECK_THROWS_AS(static_cast<void>(bessel_k0_scaled(0.0)), DomainError);
}

TEST_CASE("K0 is positive, decreasing and convex")
{
    double prev = kInf;
    double prev_slope = -kInf;
    double x_prev = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = 1e-4 * std::pow(10.0, i * 6.0 / 400.0);
        const double v = bessel_k0(x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        if (i > 0) {
            const double slope = (v - prev) / (x - x_prev);
            CHECK(slope > prev_slope);
            prev_slope = slope;
        }
        prev = v;
        x_prev = x;
    }
}

TEST_CASE("I0 series")
{
    CHECK(bessel_i0_series(0.0) == 1.0);
    CHECK(bessel_i0_series(1.0) == doctest::Approx(1.2660658777520082).epsilon(1e-15));
    CHECK(bessel_i0_series(2.0) == doctest::Approx(2.2795853023360673).epsilon(1e-15));
    CHECK(bessel_i0_series(-1.5) == bessel_i0_series(1.5));
}

TEST_CASE("K0 integrals")
{
    CHECK(std::abs(integrate([](double x) { return bessel_k0(x); }, 0.0, kInf, 1e-12).value - std::numbers::pi / 2) <=
          1e-8);
    CHECK(std::abs(integrate([](double x) { return x * bessel_k0(x); }, 0.0, kInf, 1e-12).value - 1.0) <= 1e-8);
    // K0(x) = int_0^inf exp(-x cosh t) dt
    for (double x : {0.05, 0.7, 3.0, 12.0}) {
        QuadratureOptions o;
        o.abs_tol = 1e-14;
        o.rel_tol = 1e-12;
        const double rep = integrate([x](double t) { return std::exp(-x * std::cosh(t)); }, 0.0, kInf, o).value;
        CHECK(std::abs(rep - bessel_k0(x)) / bessel_k0(x) <= 1e-9);
    }
}

TEST_CASE("quadrature: exact and classical integrals")
{
    // G7K15 is exact for polynomials up to degree 22.
    const QuadratureResult p = integrate([](double x) { return 5 * std::pow(x, 4) - 3 * x * x + 1; }, -1.0, 2.0);
    CHECK(p.value == doctest::Approx(33.0 - 9.0 + 3.0).epsilon(1e-14));
    CHECK(p.evaluations == 15);

    CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, kInf).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return 1.0 / (1.0 + x * x); }, -kInf, kInf).value ==
          doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -kInf, 0.0).value ==
          doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-12));
    // Integrable endpoint singularities.
    CHECK(integrate([](double x) { return std::log(x); }, 0.0, 1.0).value == doctest::Approx(-1.0).epsilon(1e-11));
    CHECK(integrate([](double x) { return std::log(x) * std::log(x); }, 0.0, 1.0).value ==
          doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("quadrature: orientation, linearity and tail maps")
{
    auto f = [](double x) { return std::sin(x) * std::exp(-0.1 * x); };
    auto g = [](double x) { return x * x * std::exp(-x); };
    const double fab = integrate(f, 0.5, 7.0).value;
    CHECK(integrate(f, 7.0, 0.5).value == doctest::Approx(-fab).epsilon(1e-13));
    CHECK(integrate(f, 3.0, 3.0).value == 0.0);

    const double lin = integrate([&](double x) { return 2.0 * f(x) - 3.0 * g(x); }, 0.5, 7.0).value;
    CHECK(lin == doctest::Approx(2.0 * fab - 3.0 * integrate(g, 0.5, 7.0).value).epsilon(1e-12));

    QuadratureOptions exp_map;
    exp_map.tail_map = TailMap::exponential;
    const QuadratureResult a = integrate(g, 0.0, kInf);
    const QuadratureResult b = integrate(g, 0.0, kInf, exp_map);
    CHECK(a.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(b.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.error_estimate <= 1e-12 * 2.0 + 1e-12);
}

TEST_CASE("quadrature failures")
{
    CHECK_THROWS_AS(static_cast<void>(integrate([](double x) { return 1.0 / x; }, -1.0, 1.0)), ConvergenceError);
    CHECK_THROWS_AS(static_cast<void>(integrate([](double) { return std::nan(""); }, 0.0, 1.0)), ConvergenceError);
    CHECK_THROWS_AS(static_cast<void>(integrate([](double x) { return x; }, std::nan(""), 1.0)), DomainError);
    CHECK_THROWS_AS(static_cast<void>(integrate([](double x) { return x; }, 0.0, 1.0, 0.0)), DomainError);

    QuadratureOptions tiny;
    tiny.max_evaluations = 45;
    try {
        static_cast<void>(integrate([](double x) { return std::sin(50.0 * x); }, 0.0, 10.0, tiny));
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_estimate() > 0.0);
    }
}
