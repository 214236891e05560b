// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <variant>

#include "gpue/algebra.hpp"
#include "gpue/rng.hpp"

namespace gpue {

/// Gaussian scale of the ensemble weight exp(-tr(H^dagger H) / 2 sigma^2).
struct GpueParams {
    double sigma = 1.0;

    /// Throws DomainError unless sigma > 0 and finite.
    void validate() const;
};

/// E_plus >= E_minus, both real.
struct RealSpectrum {
    double e_plus;
    double e_minus;

    double spacing() const { return e_plus - e_minus; }
    friend bool operator==(const RealSpectrum&, const RealSpectrum&) = default;
};

/// Eigenvalues re +- i im with im > 0.
struct ConjugatePair {
    double re;
    double im;
    friend bool operator==(const ConjugatePair&, const ConjugatePair&) = default;
};

using Spectrum = std::variant<RealSpectrum, ConjugatePair>;

/// Eigenvalues of [[a,-ib],[ic,a]]: a +- sqrt(bc) if bc >= 0, else a +- i sqrt(-bc).
Spectrum eigenvalues(double a, double b, double c);

/// One draw from the ensemble.
struct HSample {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    ComplexMatrix2 matrix;
    Spectrum spectrum;

    bool is_real() const { return std::holds_alternative<RealSpectrum>(spectrum); }
};

/// Assembles the matrix and classifies the spectrum for given (a, b, c).
HSample make_sample(double a, double b, double c);

Spectrum eigenvalues(const HSample& s);

/// Draw number `index` of the ensemble stream for `rng`:
/// a ~ N(0, sigma^2/2), b ~ N(0, sigma^2), c ~ N(0, sigma^2), independent.
/// Pure in (params, seed, index).
HSample sample(const GpueParams& params, const CounterRng& rng, std::uint64_t index);

/// Normalized eigenvector matrix D = (1/sqrt 2) [[1, i/r], [i r, 1]],
/// r = sqrt(c/b), with H = D diag(E+, E-) D^{-1} and D^dagger eta D = eta.
struct EigenDecomposition {
    double e_plus;
    double e_minus;
    double r;
    ComplexMatrix2 d;
};

/// Defined for b > 0 and c > 0. Samples in the b, c < 0 quadrant are handled
/// by the caller through the sign map (b, c) -> (-b, -c), which preserves the
/// spectrum. Throws DomainError otherwise.
EigenDecomposition eigenvector_matrix(const HSample& s);

struct FamilyParameters {
    double a;
    double b;
    double c;
};

/// (E+, E-, r) -> (a, b, c). Throws DomainError for r <= 0.
FamilyParameters invert_map(double e_plus, double e_minus, double r);

/// |d(a,b,c)/d(E+,E-,r)| = |E+ - E-| / (2r). Throws DomainError for r <= 0.
double jacobian(double e_plus, double e_minus, double r);

/// tr(H^dagger H) from the matrix entries.
double trace_hdagger_h(const HSample& s);

/// Normalized weight of (a, b, c):
/// exp(-(2a^2 + b^2 + c^2) / 2 sigma^2) / (2 (pi sigma^2)^{3/2}).
double gaussian_weight(double a, double b, double c, const GpueParams& params);

/// Same, from a sample; throws ConsistencyError if tr(H^dagger H) computed
/// from the matrix disagrees with 2a^2 + b^2 + c^2.
double gaussian_weight(const HSample& s, const GpueParams& params);

} // namespace gpue
