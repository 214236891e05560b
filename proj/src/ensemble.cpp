// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include "gpue/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gpue/errors.hpp"

namespace gpue {

void GpueParams::validate() const
{
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("GpueParams: sigma must be positive and finite");
    }
}

Spectrum eigenvalues(double a, double b, double c)
{
    const double bc = b * c;
    if (bc >= 0.0) {
        const double root = std::sqrt(bc);
        return RealSpectrum{a + root, a - root};
    }
    return ConjugatePair{a, std::sqrt(-bc)};
}

HSample make_sample(double a, double b, double c)
{
    return {a, b, c, family_matrix(a, b, c), eigenvalues(a, b, c)};
}

Spectrum eigenvalues(const HSample& s) { return eigenvalues(s.a, s.b, s.c); }

HSample sample(const GpueParams& params, const CounterRng& rng, std::uint64_t index)
{
    const auto z = rng.normals(Stream::ensemble, index);
    // sigma is applied last so that samples are exactly scale-covariant for
    // power-of-two ratios of sigma.
    const double a = params.sigma * (z[0] * std::numbers::sqrt2 * 0.5);
    const double b = params.sigma * z[1];
    const double c = params.sigma * z[2];
    return make_sample(a, b, c);
}

EigenDecomposition eigenvector_matrix(const HSample& s)
{
    if (!(s.b > 0.0) || !(s.c > 0.0)) {
        throw DomainError("eigenvector_matrix: requires b > 0 and c > 0");
    }
    const double r = std::sqrt(s.c / s.b);
    const double root = std::sqrt(s.b * s.c);
    const double k = 0.5 * std::numbers::sqrt2;
    const ComplexMatrix2 d{Complex(k, 0.0), Complex(0.0, k / r), Complex(0.0, k * r), Complex(k, 0.0)};
    return {s.a + root, s.a - root, r, d};
}

FamilyParameters invert_map(double e_plus, double e_minus, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("invert_map: r must be positive");
    }
    const double spacing = e_plus - e_minus;
    return {0.5 * (e_plus + e_minus), spacing / (2.0 * r), 0.5 * r * spacing};
}

double jacobian(double e_plus, double e_minus, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("jacobian: r must be positive");
    }
    return std::abs(e_plus - e_minus) / (2.0 * r);
}

double trace_hdagger_h(const HSample& s)
{
    const ComplexMatrix2& m = s.matrix;
    return std::norm(m.m11) + std::norm(m.m12) + std::norm(m.m21) + std::norm(m.m22);
}

double gaussian_weight(double a, double b, double c, const GpueParams& params)
{
    params.validate();
    const double s2 = params.sigma * params.sigma;
    const double norm = 1.0 / (2.0 * std::pow(std::numbers::pi * s2, 1.5));
    return norm * std::exp(-(2.0 * a * a + b * b + c * c) / (2.0 * s2));
}

double gaussian_weight(const HSample& s, const GpueParams& params)
{
    const double quadratic = 2.0 * s.a * s.a + s.b * s.b + s.c * s.c;
    const double trace = trace_hdagger_h(s);
    if (std::abs(trace - quadratic) > 1e-12 * std::max(1.0, quadratic)) {
        throw ConsistencyError("gaussian_weight: tr(H^dagger H) != 2a^2 + b^2 + c^2");
    }
    return gaussian_weight(s.a, s.b, s.c, params);
}

} // namespace gpue
