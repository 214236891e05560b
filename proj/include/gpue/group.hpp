// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include "gpue/algebra.hpp"

namespace gpue {

/// The PU(2) generators rho1, rho2, rho3 and the identity.
struct GeneratorSet {
    ComplexMatrix2 rho1;
    ComplexMatrix2 rho2;
    ComplexMatrix2 rho3;
    ComplexMatrix2 identity;

    /// rho_{i+1} for i in {0, 1, 2}.
    const ComplexMatrix2& rho(int i) const;
};

GeneratorSet generators();

/// Hermitian metric [[-2, i], [-i, 2]], the unique metric (up to scale) under
/// which rho1 and rho2 are both pseudo-Hermitian; since rho_k^2 = I they are
/// then also pseudo-unitary. Neither is pseudo-Hermitian under delta.
Metric generator_metric();

/// Coordinates (c0, c1, c2, c3) in the basis {I, rho1, rho2, rho3}.
using BasisCoefficients = std::array<double, 4>;

/// Complex coordinates of an arbitrary 2x2 matrix in {I, rho1, rho2, rho3}.
/// The four matrices span M2(C), so the solve always succeeds.
std::array<Complex, 4> basis_coordinates(const ComplexMatrix2& m);

/// Real expansion H = c0 I + c1 rho1 + c2 rho2 + c3 rho3 by linear solve.
/// Throws DomainError if H is not in the real span (|Im c_k| or the
/// reconstruction residual exceeds `tol`).
BasisCoefficients decompose(const ComplexMatrix2& h, double tol = 1e-12);

ComplexMatrix2 reconstruct(const BasisCoefficients& c);

/// C_ij^k with [rho_i, rho_j] = sum_k C_ij^k rho_k, stored as exact integers.
/// Indices are zero-based: C_12^3 is at(0, 1, 2).
struct StructureConstants {
    std::array<std::array<std::array<int, 3>, 3>, 3> c{};

    int at(int i, int j, int k) const { return c[i][j][k]; }
    int& at(int i, int j, int k) { return c[i][j][k]; }
};

/// Expands every commutator in the full basis including I, checks that the
/// I-component vanishes and that the rho-coefficients are integral, then
/// rounds. Throws ConsistencyError otherwise.
StructureConstants structure_constants();

/// max |C_kl^j + C_lk^j| over all indices.
int antisymmetry_residual(const StructureConstants& c);

/// max over (k,l,j,s) of |sum_m C_kl^m C_jm^s + C_lj^m C_km^s + C_jk^m C_lm^s|.
double check_jacobi(const StructureConstants& c);

struct GroupAxiomReport {
    int n_samples = 0;
    double closure = 0.0;       ///< products D_i D_j pseudo-unitary
    double inverse = 0.0;       ///< D_i^{-1} pseudo-unitary
    double identity = 0.0;      ///< I pseudo-unitary, I D = D I = D
    double associativity = 0.0; ///< (D_i D_j) D_k = D_i (D_j D_k)
    double unimodularity = 0.0; ///< | |det D_i| - 1 |
    double generator = 0.0;     ///< D_i = expm(i G_i) pseudo-unitary (absolute)

    double max_residual() const;
};

/// Random G with G pseudo-Hermitian under `metric`, entries scaled by `scale`.
/// For delta this is the family [[a,-ib],[ic,a]] with a, b, c uniform in
/// [-scale, scale]; for a Hermitian metric it is eta^{-1} K with K random
/// Hermitian. Other metrics throw DomainError.
ComplexMatrix2 random_pseudo_hermitian(const Metric& metric, std::uint64_t seed, std::uint64_t index,
                                       double scale);

/// Draws n_samples pseudo-unitaries D = expm(i G) and checks the group axioms.
/// `generator` is the absolute pseudo-unitarity residual of each D; the product
/// and inverse residuals are divided by max(1, ||X||^2) because their entries
/// grow like ||D||^2 and the absolute roundoff grows with them.
GroupAxiomReport check_group_axioms(const Metric& metric, int n_samples, std::uint64_t seed, double scale = 1.0);

} // namespace gpue
