// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include "gpue/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gpue/errors.hpp"

namespace gpue {

namespace {

void require_sigma(double sigma, const char* who)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError(std::string(who) + ": sigma must be positive and finite");
    }
}

// jpdf in (sum, difference) coordinates. The K0 argument can underflow for
// tiny spacings; the |diff| prefactor wins and the limit is 0.
double jpdf_sum_diff(double sum, double diff, double sigma)
{
    const double s2 = sigma * sigma;
    const double z = diff * diff / (4.0 * s2);
    if (z == 0.0) {
        return 0.0;
    }
    const double norm = 1.0 / (2.0 * std::pow(std::numbers::pi * s2, 1.5));
    return std::abs(diff) * norm * bessel_k0(z) * std::exp(-sum * sum / (4.0 * s2));
}

QuadratureOptions tight(double tol)
{
    QuadratureOptions o;
    o.abs_tol = tol;
    o.rel_tol = tol;
    return o;
}

} // namespace

double jpdf(double e_plus, double e_minus, double sigma)
{
    require_sigma(sigma, "jpdf");
    return jpdf_sum_diff(e_plus + e_minus, e_plus - e_minus, sigma);
}

double jpdf_oracle(double e_plus, double e_minus, double sigma)
{
    require_sigma(sigma, "jpdf_oracle");
    if (e_plus == e_minus) {
        throw DomainError("jpdf_oracle: requires E+ != E-");
    }
    const GpueParams params{sigma};
    auto integrand = [&](double r) {
        const FamilyParameters p = invert_map(e_plus, e_minus, r);
        return gaussian_weight(p.a, p.b, p.c, params) * jacobian(e_plus, e_minus, r);
    };
    // The factor 2 counts the b, c < 0 quadrant, which has the same weight.
    return 2.0 * integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), tight(1e-12)).value;
}

double spacing_pdf(double s, double sigma)
{
    require_sigma(sigma, "spacing_pdf");
    if (!(s >= 0.0)) {
        throw DomainError("spacing_pdf: spacing must be non-negative");
    }
    const double s2 = sigma * sigma;
    const double z = s * s / (4.0 * s2);
    if (z == 0.0) {
        return 0.0;
    }
    return s / (std::numbers::pi * s2) * bessel_k0(z);
}

double mean_spacing(double sigma)
{
    require_sigma(sigma, "mean_spacing");
    // <S> = sigma (4 / pi) Gamma(3/4)^2 / sqrt(2); the tests check it against
    // direct quadrature of S P(S).
    const double g = std::tgamma(0.75);
    return sigma * 4.0 / std::numbers::pi * g * g / std::numbers::sqrt2;
}

double spacing_pdf_unit_mean(double s)
{
    static const double mean = mean_spacing(1.0);
    return mean * spacing_pdf(mean * s, 1.0);
}

double level_density(double e, double sigma, double tol)
{
    require_sigma(sigma, "level_density");
    // Split at x = E, where the integrand has its u log u kink, and integrate
    // the two half-lines together in u = |x - E|. The sum is symmetric under
    // E -> -E term by term, so the result is exactly even.
    auto f = [e, sigma](double u) {
        return jpdf_sum_diff(2.0 * e + u, u, sigma) + jpdf_sum_diff(2.0 * e - u, u, sigma);
    };
    return 2.0 * integrate(f, 0.0, std::numeric_limits<double>::infinity(), tight(tol)).value;
}

double spacing_from_jpdf(double s, double sigma)
{
    require_sigma(sigma, "spacing_from_jpdf");
    auto f = [s, sigma](double c) { return jpdf(c + 0.5 * s, c - 0.5 * s, sigma) + jpdf(c - 0.5 * s, c + 0.5 * s, sigma); };
    const double inf = std::numeric_limits<double>::infinity();
    return integrate(f, -inf, inf, tight(1e-13)).value;
}

double jpdf_total_mass(double sigma)
{
    auto f = [sigma](double s) { return spacing_from_jpdf(s, sigma); };
    return integrate(f, 0.0, std::numeric_limits<double>::infinity(), tight(1e-10)).value;
}

double wigner_reference(int beta0, double s)
{
    if (!(s >= 0.0)) {
        throw DomainError("wigner_reference: s must be non-negative");
    }
    constexpr double pi = std::numbers::pi;
    switch (beta0) {
    case 1: return 0.5 * pi * s * std::exp(-0.25 * pi * s * s);
    case 2: return 32.0 / (pi * pi) * s * s * std::exp(-4.0 * s * s / pi);
    default: throw DomainError("wigner_reference: beta0 must be 1 or 2");
    }
}

double trapezoid(std::span<const double> grid, std::span<const double> values)
{
    if (grid.size() != values.size()) {
        throw DomainError("trapezoid: grid and values differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        sum += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
    }
    return sum;
}

SpacingCurve spacing_curve(double sigma, std::span<const double> grid)
{
    SpacingCurve curve{sigma, std::vector<double>(grid.begin(), grid.end()), {}};
    curve.values.reserve(grid.size());
    for (double s : grid) {
        curve.values.push_back(spacing_pdf(s, sigma));
    }
    return curve;
}

void BinSpec::validate() const
{
    if (!(bins >= 1) || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("BinSpec: need bins >= 1 and finite lo < hi");
    }
}

std::vector<double> BinSpec::edges() const
{
    std::vector<double> e(static_cast<std::size_t>(bins) + 1);
    const double w = width();
    for (int i = 0; i <= bins; ++i) {
        e[i] = lo + i * w;
    }
    e.back() = hi;
    return e;
}

int BinSpec::locate(double x) const
{
    if (x < lo) {
        return -1;
    }
    if (!(x < hi)) {
        return bins;
    }
    const int i = static_cast<int>(std::floor((x - lo) / width()));
    return std::clamp(i, 0, bins - 1);
}

Histogram::Histogram(const BinSpec& spec) : edges(spec.edges()), counts(static_cast<std::size_t>(spec.bins), 0) {}

void Histogram::add(const BinSpec& spec, double x)
{
    const int i = spec.locate(x);
    if (i < 0) {
        ++underflow;
    } else if (i >= spec.bins) {
        ++overflow;
    } else {
        ++counts[static_cast<std::size_t>(i)];
        ++total;
    }
}

std::vector<double> Histogram::density() const
{
    std::vector<double> d(counts.size(), 0.0);
    if (total == 0) {
        return d;
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
        d[i] = static_cast<double>(counts[i]) / (static_cast<double>(total) * (edges[i + 1] - edges[i]));
    }
    return d;
}

ComparisonReport compare(const Histogram& h, std::uint64_t trials, std::span<const double> p)
{
    if (p.size() != h.counts.size()) {
        throw DomainError("compare: probability vector does not match the histogram");
    }
    ComparisonReport report;
    report.z_scores.resize(p.size());
    double p_in = 0.0;
    for (double v : p) {
        p_in += v;
    }
    const auto density = h.density();
    const double n = static_cast<double>(trials);
    std::size_t within = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double expected = n * p[i];
        const double sd = std::sqrt(n * p[i] * (1.0 - p[i]));
        const double count = static_cast<double>(h.counts[i]);
        double z = 0.0;
        if (sd > 0.0) {
            z = (count - expected) / sd;
        } else if (count != expected) {
            z = std::numeric_limits<double>::infinity();
        }
        report.z_scores[i] = z;
        if (std::abs(z) <= 3.0) {
            ++within;
        }
        if (p_in > 0.0) {
            const double analytic = p[i] / (p_in * (h.edges[i + 1] - h.edges[i]));
            report.sup_norm = std::max(report.sup_norm, std::abs(density[i] - analytic));
        }
    }
    report.fraction_within_3sigma = p.empty() ? 0.0 : static_cast<double>(within) / static_cast<double>(p.size());
    return report;
}

std::vector<double> spacing_bin_probabilities(double sigma, const BinSpec& spec, bool unit_mean)
{
    spec.validate();
    const auto e = spec.edges();
    std::vector<double> p(static_cast<std::size_t>(spec.bins), 0.0);
    for (int i = 0; i < spec.bins; ++i) {
        const double lo = std::max(0.0, e[i]);
        const double hi = e[i + 1];
        if (!(hi > lo)) {
            continue;
        }
        auto f = [&](double s) { return unit_mean ? spacing_pdf_unit_mean(s) : spacing_pdf(s, sigma); };
        p[i] = integrate(f, lo, hi, tight(1e-13)).value;
    }
    return p;
}

std::vector<double> level_bin_probabilities(double sigma, const BinSpec& spec)
{
    spec.validate();
    const auto e = spec.edges();
    std::vector<double> p(static_cast<std::size_t>(spec.bins), 0.0);
    auto f = [sigma](double x) { return 0.5 * level_density(x, sigma, 1e-11); };
    for (int i = 0; i < spec.bins; ++i) {
        p[i] = integrate(f, e[i], e[i + 1], tight(1e-10)).value;
    }
    return p;
}

} // namespace gpue
