// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "gpue/algebra.hpp"
#include "gpue/errors.hpp"

using namespace gpue;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix2 random_matrix(std::mt19937_64& gen, double scale = 1.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    return {Complex(u(gen), u(gen)), Complex(u(gen), u(gen)), Complex(u(gen), u(gen)), Complex(u(gen), u(gen))};
}

} // namespace

TEST_CASE("matrix arithmetic")
{
    const ComplexMatrix2 a{1.0, 2.0 * I, -I, 3.0};
    const ComplexMatrix2 b{0.5, 1.0, 1.0, -2.0};

    CHECK(a + b == ComplexMatrix2{1.5, 1.0 + 2.0 * I, 1.0 - I, 1.0});
    CHECK(a * b == ComplexMatrix2{0.5 + 2.0 * I, 1.0 - 4.0 * I, 3.0 - 0.5 * I, -6.0 - I});
    CHECK(a.trace() == Complex(4.0, 0.0));
    CHECK(a.det() == Complex(3.0 - 2.0, 0.0));
    CHECK(a.adjoint() == ComplexMatrix2{1.0, I, -2.0 * I, 3.0});
    CHECK(distance(a * a.inverse(), ComplexMatrix2::identity()) < 1e-15);
    CHECK(commutator(a, a) == ComplexMatrix2::zero());
    CHECK(a.max_norm() == doctest::Approx(3.0));
}

TEST_CASE("singular inverse throws")
{
    const ComplexMatrix2 s{1.0, 2.0, 2.0, 4.0};
    CHECK_THROWS_AS(static_cast<void>(s.inverse()), DomainError);
    CHECK_THROWS_AS(static_cast<void>(Metric::custom(s)), DomainError);
}

TEST_CASE("metrics")
{
    CHECK(Metric::delta().matrix() == ComplexMatrix2{0.0, -1.0, 1.0, 0.0});
    CHECK(Metric::eta().matrix() == ComplexMatrix2{0.0, 1.0, 1.0, 0.0});
    CHECK(Metric::delta().matrix() * Metric::delta().matrix() == -ComplexMatrix2::identity());
    CHECK(Metric::eta().matrix() * Metric::eta().matrix() == ComplexMatrix2::identity());
    CHECK(Metric::delta().kind() == MetricKind::delta);
    CHECK(to_string(MetricKind::eta) == "eta");
}

TEST_CASE("family matrix is delta-pseudo-Hermitian")
{
    const ComplexMatrix2 h = family_matrix(1.0, 2.0, 3.0);
    CHECK(h == ComplexMatrix2{1.0, -2.0 * I, 3.0 * I, 1.0});
    CHECK(pseudo_hermiticity_residual(h, Metric::delta()) == 0.0);
    CHECK(is_pseudo_hermitian(h, Metric::delta()));

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int k = 0; k < 500; ++k) {
        CHECK(is_pseudo_hermitian(family_matrix(u(gen), u(gen), u(gen)), Metric::delta(), 1e-12));
    }
    // A generic matrix is not.
    CHECK_FALSE(is_pseudo_hermitian(ComplexMatrix2{1.0, 1.0, 0.0, 2.0}, Metric::delta()));
}

TEST_CASE("non-positive tolerance is rejected")
{
    CHECK_THROWS_AS(static_cast<void>(is_pseudo_hermitian(ComplexMatrix2::identity(), Metric::eta(), 0.0)),
                    DomainError);
    CHECK_THROWS_AS(static_cast<void>(is_pseudo_unitary(ComplexMatrix2::identity(), Metric::eta(), -1.0)),
                    DomainError);
}

TEST_CASE("pseudo-adjoint is an involution for Hermitian metrics")
{
    std::mt19937_64 gen(3);
    const Metric eta = Metric::eta();
    const Metric custom = Metric::custom({2.0, I, -I, 3.0});
    for (int k = 0; k < 200; ++k) {
        const ComplexMatrix2 a = random_matrix(gen, 4.0);
        CHECK(distance(pseudo_adjoint(pseudo_adjoint(a, eta), eta), a) <= 1e-14);
        CHECK(distance(pseudo_adjoint(pseudo_adjoint(a, custom), custom), a) <= 1e-13);
    }
}

TEST_CASE("expm agrees with the Cayley-Hamilton closed form")
{
    std::mt19937_64 gen(5);
    for (int k = 0; k < 300; ++k) {
        const ComplexMatrix2 a = random_matrix(gen, 6.0);
        const ComplexMatrix2 e = expm(a);
        CHECK(distance(e, expm_closed_form(a)) / std::max(1.0, e.max_norm()) < 1e-12);
    }
}

TEST_CASE("expm special values")
{
    CHECK(expm(ComplexMatrix2::zero()) == ComplexMatrix2::identity());

    const ComplexMatrix2 d = expm(ComplexMatrix2::diagonal(1.0, Complex(0.0, M_PI)));
    CHECK(std::abs(d.m11 - std::exp(1.0)) < 1e-14);
    CHECK(std::abs(d.m22 + 1.0) < 1e-14);

    // exp(t delta) is a rotation.
    const double t = 0.7;
    const ComplexMatrix2 r = expm(Complex(t, 0.0) * Metric::delta().matrix());
    CHECK(distance(r, ComplexMatrix2{std::cos(t), -std::sin(t), std::sin(t), std::cos(t)}) < 1e-15);

    // Nilpotent: exp(N) = I + N exactly.
    const ComplexMatrix2 n{0.0, 3.0 + I, 0.0, 0.0};
    CHECK(distance(expm(n), ComplexMatrix2::identity() + n) < 1e-15);
    CHECK(distance(expm_closed_form(n), ComplexMatrix2::identity() + n) < 1e-15);

    // det(exp A) = exp(tr A)
    const ComplexMatrix2 a{0.3, -1.2 * I, 0.4, -0.1 + 0.5 * I};
    CHECK(std::abs(expm(a).det() - std::exp(a.trace())) < 1e-14);
}

TEST_CASE("exponential of i G is delta-pseudo-unitary")
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const ComplexMatrix2 d = expm(I * family_matrix(u(gen), u(gen), u(gen)));
        worst = std::max(worst, pseudo_unitarity_residual(d, Metric::delta()));
    }
    CHECK(worst <= 1e-11);
}

TEST_CASE("pseudo-unitary maps preserve the indefinite inner product")
{
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Metric delta = Metric::delta();
    for (int k = 0; k < 200; ++k) {
        const ComplexMatrix2 d = expm(I * family_matrix(u(gen), u(gen), u(gen)));
        const Vector2 x{Complex(u(gen), u(gen)), Complex(u(gen), u(gen))};
        const Vector2 y{Complex(u(gen), u(gen)), Complex(u(gen), u(gen))};
        CHECK(std::abs(pseudo_inner(d * x, d * y, delta) - pseudo_inner(x, y, delta)) < 1e-12);
    }
    // The delta form is anti-Hermitian: <x|delta x> is purely imaginary.
    const Vector2 x{Complex(0.3, 1.0), Complex(-2.0, 0.5)};
    CHECK(std::abs(pseudo_inner(x, x, delta).real()) < 1e-15);
}

TEST_CASE("antilinear symmetry residual")
{
    // delta conj(H) delta^{-1} = [[a, ic], [-ib, a]]; it differs from H by
    // |b + c| in the off-diagonal entries.
    const ComplexMatrix2 h = family_matrix(1.0, 2.0, 3.0);
    CHECK(antilinear_symmetry_residual(h, Metric::delta().matrix()) == doctest::Approx(5.0));
    CHECK(antilinear_symmetry_residual(family_matrix(1.0, 2.0, -2.0), Metric::delta().matrix()) == 0.0);
    // diag(-1, 1) is an exact antilinear symmetry of the whole family.
    CHECK(antilinear_symmetry_residual(h, ComplexMatrix2::diagonal(-1.0, 1.0)) == 0.0);
    CHECK_THROWS_AS(static_cast<void>(antilinear_symmetry_residual(h, ComplexMatrix2::zero())), DomainError);
}
