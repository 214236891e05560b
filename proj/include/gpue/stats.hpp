// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpue/ensemble.hpp"
#include "gpue/specfun.hpp"

namespace gpue {

// Conventions used throughout this header.
//
// The eigenvalue density jpdf(E+, E-) is symmetric in its arguments and has
// unit mass over the whole plane; equivalently mass 1/2 on the ordered wedge
// E+ > E-, which is the probability of the real-spectrum sector. Spacing
// statistics are conditioned on that sector: spacing_pdf(S) has unit mass on
// S >= 0.

/// |E+ - E-| / (2 (pi sigma^2)^{3/2}) K0((E+ - E-)^2 / 4 sigma^2) exp(-(E+ + E-)^2 / 4 sigma^2).
/// Zero on the diagonal. Throws DomainError for sigma <= 0.
double jpdf(double e_plus, double e_minus, double sigma);

/// Independent route to jpdf: marginalizes the Gaussian weight of (a, b, c)
/// over r after the change of variables (E+, E-, r), summing both
/// real-spectrum quadrants. Uses no Bessel function. Requires E+ != E-.
double jpdf_oracle(double e_plus, double e_minus, double sigma);

/// (S / pi sigma^2) K0(S^2 / 4 sigma^2) for S >= 0; zero at S = 0.
double spacing_pdf(double s, double sigma);

/// Density of s = S / <S>, i.e. <S> spacing_pdf(<S> s).
double spacing_pdf_unit_mean(double s);

/// <S> = int_0^inf S spacing_pdf(S) dS = sigma (4 / pi) Gamma(3/4)^2 / sqrt(2).
double mean_spacing(double sigma);

/// rho(E) = 2 int jpdf(E, x) dx; integrates to 2 (two levels per matrix).
/// Even in E. Throws ConvergenceError if the inner quadrature fails.
double level_density(double e, double sigma, double tol = 1e-12);

/// Spacing density recovered by integrating jpdf over the centre of mass at
/// fixed spacing, both orderings included. Equals spacing_pdf.
double spacing_from_jpdf(double s, double sigma);

/// Total mass of jpdf over the plane, in (centre, spacing) variables. Equals 1.
double jpdf_total_mass(double sigma);

/// Unit-mean Wigner surmise: beta0 = 1 (orthogonal), 2 (unitary).
/// Throws DomainError for other classes or s < 0.
double wigner_reference(int beta0, double s);

/// Trapezoid rule on an ordered, possibly non-uniform grid.
double trapezoid(std::span<const double> grid, std::span<const double> values);

struct SpacingCurve {
    double sigma = 1.0;
    std::vector<double> grid;
    std::vector<double> values;
};

SpacingCurve spacing_curve(double sigma, std::span<const double> grid);

/// Uniform bins on [lo, hi).
struct BinSpec {
    double lo = 0.0;
    double hi = 1.0;
    int bins = 100;

    void validate() const;
    double width() const { return (hi - lo) / bins; }
    std::vector<double> edges() const;
    /// Bin index, or -1 below lo, or `bins` at or above hi.
    int locate(double x) const;
};

struct Histogram {
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0; ///< sum of counts (in-range entries only)
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;

    explicit Histogram(const BinSpec& spec = {});

    void add(const BinSpec& spec, double x);
    /// count / (total * width); integrates to 1 whenever total > 0.
    std::vector<double> density() const;
    std::size_t bins() const { return counts.size(); }
};

struct ComparisonReport {
    double sup_norm = 0.0; ///< max |empirical density - analytic bin-average density|
    std::vector<double> z_scores;
    double fraction_within_3sigma = 0.0;
    double rejected_fraction = 0.0;
};

/// Binomial z-scores of `h` against bin probabilities `p` (unconditional, per
/// trial) over `trials` independent trials.
ComparisonReport compare(const Histogram& h, std::uint64_t trials, std::span<const double> p);

/// Per-bin probabilities of spacing_pdf (or its unit-mean form) by quadrature.
std::vector<double> spacing_bin_probabilities(double sigma, const BinSpec& spec, bool unit_mean = false);

/// Per-bin probabilities of a single level, rho/2, by nested quadrature.
std::vector<double> level_bin_probabilities(double sigma, const BinSpec& spec);

/// Histogram of E+ - E- over the real-spectrum members of `samples`, each
/// spacing divided by `scale`. Complex-spectrum samples are skipped.
Histogram spacing_histogram(std::span<const HSample> samples, const BinSpec& spec, double scale = 1.0);

struct McOptions {
    unsigned workers = 1;
    bool unit_mean = false; ///< histogram S / mean_spacing(sigma) instead of S
};

struct McSpacingResult {
    Histogram histogram;
    ComparisonReport report{};
    std::uint64_t draws = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    double scale = 1.0;        ///< divisor applied to S before binning
    double mean_spacing = 0.0; ///< empirical mean of the accepted S / scale
};

/// Draws samples 0..n-1 of the ensemble stream for `seed`, discards
/// complex-spectrum draws, histograms the spacing and compares it with
/// spacing_pdf. Bit-identical for any worker count. Throws StatisticsError if
/// no draw is accepted.
McSpacingResult mc_spacing(const GpueParams& params, std::uint64_t n, const BinSpec& spec, std::uint64_t seed,
                           const McOptions& options = {});

struct McDensityResult {
    Histogram histogram; ///< both eigenvalues of every accepted draw
    ComparisonReport report{};
    std::uint64_t draws = 0;
    std::uint64_t accepted = 0;
};

/// Draws until exactly `accepted_target` real-spectrum samples have been seen
/// and histograms both of their eigenvalues against rho/2. Bit-identical for
/// any worker count.
McDensityResult mc_level_density(const GpueParams& params, std::uint64_t accepted_target, const BinSpec& spec,
                                 std::uint64_t seed, unsigned workers = 1);

} // namespace gpue
