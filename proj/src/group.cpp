// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include "gpue/group.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gpue/errors.hpp"
#include "gpue/rng.hpp"

namespace gpue {

namespace {

using Row = std::array<Complex, 5>;

// Solves the 4x4 complex system by Gaussian elimination with partial pivoting.
// Columns 0..3 hold the basis coordinates, column 4 the right-hand side.
std::array<Complex, 4> solve4(std::array<Row, 4> m)
{
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) {
                pivot = r;
            }
        }
        if (std::abs(m[pivot][col]) == 0.0) {
            throw ConsistencyError("basis_coordinates: generator basis is singular");
        }
        std::swap(m[col], m[pivot]);
        for (int r = col + 1; r < 4; ++r) {
            const Complex f = m[r][col] / m[col][col];
            for (int k = col; k < 5; ++k) {
                m[r][k] -= f * m[col][k];
            }
        }
    }
    std::array<Complex, 4> x{};
    for (int r = 3; r >= 0; --r) {
        Complex s = m[r][4];
        for (int k = r + 1; k < 4; ++k) {
            s -= m[r][k] * x[k];
        }
        x[r] = s / m[r][r];
    }
    return x;
}

std::array<Complex, 4> entries(const ComplexMatrix2& m) { return {m.m11, m.m12, m.m21, m.m22}; }

double relative_pu_residual(const ComplexMatrix2& x, const Metric& metric)
{
    const double scale = std::max(1.0, x.max_norm() * x.max_norm());
    return pseudo_unitarity_residual(x, metric) / scale;
}

} // namespace

const ComplexMatrix2& GeneratorSet::rho(int i) const
{
    switch (i) {
    case 0: return rho1;
    case 1: return rho2;
    case 2: return rho3;
    default: throw DomainError("GeneratorSet::rho: index must be 0, 1 or 2");
    }
}

GeneratorSet generators()
{
    const Complex i(0.0, 1.0);
    return {
        {1.0, 0.0, i, -1.0},
        {1.0, -i, 0.0, -1.0},
        {-1.0, 0.0, 0.0, 1.0},
        ComplexMatrix2::identity(),
    };
}

Metric generator_metric()
{
    const Complex i(0.0, 1.0);
    return Metric::custom({-2.0, i, -i, 2.0});
}

std::array<Complex, 4> basis_coordinates(const ComplexMatrix2& m)
{
    const GeneratorSet g = generators();
    const std::array<std::array<Complex, 4>, 4> basis{entries(g.identity), entries(g.rho1), entries(g.rho2),
                                                      entries(g.rho3)};
    const auto rhs = entries(m);
    std::array<Row, 4> system{};
    for (int e = 0; e < 4; ++e) {
        for (int b = 0; b < 4; ++b) {
            system[e][b] = basis[b][e];
        }
        system[e][4] = rhs[e];
    }
    return solve4(system);
}

BasisCoefficients decompose(const ComplexMatrix2& h, double tol)
{
    const auto z = basis_coordinates(h);
    BasisCoefficients c{};
    double imag = 0.0;
    for (int k = 0; k < 4; ++k) {
        c[k] = z[k].real();
        imag = std::max(imag, std::abs(z[k].imag()));
    }
    const double residual = std::max(imag, distance(reconstruct(c), h));
    if (residual > tol * std::max(1.0, h.max_norm())) {
        throw DomainError("decompose: matrix is outside the real span of {I, rho1, rho2, rho3} (residual " +
                          std::to_string(residual) + ")");
    }
    return c;
}

ComplexMatrix2 reconstruct(const BasisCoefficients& c)
{
    const GeneratorSet g = generators();
    return Complex(c[0]) * g.identity + Complex(c[1]) * g.rho1 + Complex(c[2]) * g.rho2 + Complex(c[3]) * g.rho3;
}

StructureConstants structure_constants()
{
    const GeneratorSet g = generators();
    StructureConstants out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const auto z = basis_coordinates(commutator(g.rho(i), g.rho(j)));
            if (std::abs(z[0]) > 1e-12) {
                throw ConsistencyError("structure_constants: commutator has an identity component");
            }
            for (int k = 0; k < 3; ++k) {
                const Complex v = z[k + 1];
                const double rounded = std::round(v.real());
                if (std::abs(v.imag()) > 1e-10 || std::abs(v.real() - rounded) > 1e-10) {
                    throw ConsistencyError("structure_constants: non-integer coefficient");
                }
                out.at(i, j, k) = static_cast<int>(rounded);
            }
        }
    }
    return out;
}

int antisymmetry_residual(const StructureConstants& c)
{
    int worst = 0;
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            for (int j = 0; j < 3; ++j) {
                worst = std::max(worst, std::abs(c.at(k, l, j) + c.at(l, k, j)));
            }
        }
    }
    return worst;
}

double check_jacobi(const StructureConstants& c)
{
    long worst = 0;
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            for (int j = 0; j < 3; ++j) {
                for (int s = 0; s < 3; ++s) {
                    long sum = 0;
                    for (int m = 0; m < 3; ++m) {
                        sum += static_cast<long>(c.at(k, l, m)) * c.at(j, m, s) +
                               static_cast<long>(c.at(l, j, m)) * c.at(k, m, s) +
                               static_cast<long>(c.at(j, k, m)) * c.at(l, m, s);
                    }
                    worst = std::max(worst, std::abs(sum));
                }
            }
        }
    }
    return static_cast<double>(worst);
}

double GroupAxiomReport::max_residual() const
{
    return std::max({closure, inverse, identity, associativity, unimodularity, generator});
}

ComplexMatrix2 random_pseudo_hermitian(const Metric& metric, std::uint64_t seed, std::uint64_t index, double scale)
{
    const auto u = CounterRng(seed).uniforms(Stream::group_axioms, index);
    auto uniform = [&](int k) { return scale * (2.0 * u[k] - 1.0); };
    if (metric.kind() == MetricKind::delta) {
        return family_matrix(uniform(0), uniform(1), uniform(2));
    }
    if (distance(metric.matrix(), metric.matrix().adjoint()) > 0.0) {
        throw DomainError("random_pseudo_hermitian: metric must be delta or Hermitian");
    }
    const Complex off(uniform(2), uniform(3));
    const ComplexMatrix2 k{uniform(0), off, std::conj(off), uniform(1)};
    return metric.inverse() * k;
}

GroupAxiomReport check_group_axioms(const Metric& metric, int n_samples, std::uint64_t seed, double scale)
{
    if (n_samples < 0) {
        throw DomainError("check_group_axioms: n_samples must be non-negative");
    }
    GroupAxiomReport report;
    report.n_samples = n_samples;

    const ComplexMatrix2 id = ComplexMatrix2::identity();
    report.identity = pseudo_unitarity_residual(id, metric);

    std::vector<ComplexMatrix2> d;
    d.reserve(static_cast<std::size_t>(n_samples));
    const Complex i(0.0, 1.0);
    for (int s = 0; s < n_samples; ++s) {
        const ComplexMatrix2 g = random_pseudo_hermitian(metric, seed, static_cast<std::uint64_t>(s), scale);
        d.push_back(expm(i * g));
    }

    for (int s = 0; s < n_samples; ++s) {
        const ComplexMatrix2& x = d[s];
        const ComplexMatrix2& y = d[(s + 1) % n_samples];
        const ComplexMatrix2& z = d[(s + 2) % n_samples];
        const double xs = std::max(1.0, x.max_norm());

        report.generator = std::max(report.generator, pseudo_unitarity_residual(x, metric));
        report.closure = std::max(report.closure, relative_pu_residual(x * y, metric));
        report.inverse = std::max(report.inverse, relative_pu_residual(x.inverse(), metric));
        report.identity = std::max(report.identity, std::max(distance(id * x, x), distance(x * id, x)) / xs);
        const double triple = std::max(1.0, x.max_norm() * y.max_norm() * z.max_norm());
        report.associativity = std::max(report.associativity, distance((x * y) * z, x * (y * z)) / triple);
        report.unimodularity = std::max(report.unimodularity, std::abs(std::abs(x.det()) - 1.0) / (xs * xs));
    }
    return report;
}

} // namespace gpue
