// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include "gpue/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpue/errors.hpp"

namespace gpue {

ComplexMatrix2 ComplexMatrix2::inverse() const
{
    const Complex d = det();
    const double scale = max_norm();
    if (scale == 0.0 || std::abs(d) <= 4.0 * std::numeric_limits<double>::epsilon() * scale * scale) {
        throw DomainError("ComplexMatrix2::inverse: matrix is singular");
    }
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

double ComplexMatrix2::max_norm() const
{
    return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

ComplexMatrix2& ComplexMatrix2::operator+=(const ComplexMatrix2& o)
{
    m11 += o.m11;
    m12 += o.m12;
    m21 += o.m21;
    m22 += o.m22;
    return *this;
}

ComplexMatrix2& ComplexMatrix2::operator-=(const ComplexMatrix2& o)
{
    m11 -= o.m11;
    m12 -= o.m12;
    m21 -= o.m21;
    m22 -= o.m22;
    return *this;
}

ComplexMatrix2& ComplexMatrix2::operator*=(Complex s)
{
    m11 *= s;
    m12 *= s;
    m21 *= s;
    m22 *= s;
    return *this;
}

ComplexMatrix2 operator+(ComplexMatrix2 a, const ComplexMatrix2& b) { return a += b; }
ComplexMatrix2 operator-(ComplexMatrix2 a, const ComplexMatrix2& b) { return a -= b; }
ComplexMatrix2 operator-(const ComplexMatrix2& a) { return {-a.m11, -a.m12, -a.m21, -a.m22}; }
ComplexMatrix2 operator*(Complex s, ComplexMatrix2 a) { return a *= s; }
ComplexMatrix2 operator*(ComplexMatrix2 a, Complex s) { return a *= s; }

ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b)
{
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

ComplexMatrix2 commutator(const ComplexMatrix2& a, const ComplexMatrix2& b) { return a * b - b * a; }

double distance(const ComplexMatrix2& a, const ComplexMatrix2& b) { return (a - b).max_norm(); }

Vector2 operator*(const ComplexMatrix2& m, const Vector2& v)
{
    return {m.m11 * v.x1 + m.m12 * v.x2, m.m21 * v.x1 + m.m22 * v.x2};
}

Complex dot(const Vector2& x, const Vector2& y) { return std::conj(x.x1) * y.x1 + std::conj(x.x2) * y.x2; }

std::string_view to_string(MetricKind kind)
{
    switch (kind) {
    case MetricKind::delta: return "delta";
    case MetricKind::eta: return "eta";
    case MetricKind::identity: return "identity";
    case MetricKind::custom: return "custom";
    }
    return "custom";
}

Metric::Metric(const ComplexMatrix2& m, MetricKind kind) : matrix_(m), inverse_(m.inverse()), kind_(kind) {}

Metric Metric::delta() { return Metric({0.0, -1.0, 1.0, 0.0}, MetricKind::delta); }
Metric Metric::eta() { return Metric({0.0, 1.0, 1.0, 0.0}, MetricKind::eta); }
Metric Metric::identity() { return Metric(ComplexMatrix2::identity(), MetricKind::identity); }
Metric Metric::custom(const ComplexMatrix2& m) { return Metric(m, MetricKind::custom); }

ComplexMatrix2 family_matrix(double a, double b, double c)
{
    return {Complex(a, 0.0), Complex(0.0, -b), Complex(0.0, c), Complex(a, 0.0)};
}

ComplexMatrix2 pseudo_adjoint(const ComplexMatrix2& a, const Metric& eta)
{
    return eta.inverse() * a.adjoint() * eta.matrix();
}

double pseudo_hermiticity_residual(const ComplexMatrix2& a, const Metric& eta)
{
    return distance(pseudo_adjoint(a, eta), a);
}

bool is_pseudo_hermitian(const ComplexMatrix2& a, const Metric& eta, double tol)
{
    if (!(tol > 0.0)) {
        throw DomainError("is_pseudo_hermitian: tolerance must be positive");
    }
    return pseudo_hermiticity_residual(a, eta) <= tol;
}

double pseudo_unitarity_residual(const ComplexMatrix2& d, const Metric& eta)
{
    return distance(d.adjoint() * eta.matrix() * d, eta.matrix());
}

bool is_pseudo_unitary(const ComplexMatrix2& d, const Metric& eta, double tol)
{
    if (!(tol > 0.0)) {
        throw DomainError("is_pseudo_unitary: tolerance must be positive");
    }
    return pseudo_unitarity_residual(d, eta) <= tol;
}

Complex pseudo_inner(const Vector2& x, const Vector2& y, const Metric& eta) { return dot(x, eta.matrix() * y); }

ComplexMatrix2 expm(const ComplexMatrix2& a)
{
    // Scale into ||B||_inf <= 1/2 (power-of-two scaling is exact), sum the
    // Taylor series to below a unit roundoff of the partial sum, then square.
    const double bound = 2.0 * a.max_norm();
    int squarings = 0;
    if (bound > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(bound / 0.5)));
    }
    const ComplexMatrix2 b = a * Complex(std::ldexp(1.0, -squarings), 0.0);

    ComplexMatrix2 sum = ComplexMatrix2::identity();
    ComplexMatrix2 term = ComplexMatrix2::identity();
    for (int k = 1; k <= 40; ++k) {
        term = term * b * Complex(1.0 / k, 0.0);
        sum += term;
        if (term.max_norm() <= 1e-18 * sum.max_norm()) {
            break;
        }
    }
    for (int i = 0; i < squarings; ++i) {
        sum = sum * sum;
    }
    return sum;
}

ComplexMatrix2 expm_closed_form(const ComplexMatrix2& a)
{
    const Complex half_trace = 0.5 * a.trace();
    const ComplexMatrix2 traceless = a - ComplexMatrix2::diagonal(half_trace, half_trace);
    // traceless^2 = w^2 I
    const Complex w = std::sqrt(-traceless.det());
    Complex sinhc;
    if (std::abs(w) < 1e-4) {
        const Complex w2 = w * w;
        sinhc = 1.0 + w2 / 6.0 + w2 * w2 / 120.0;
    } else {
        sinhc = std::sinh(w) / w;
    }
    const Complex ch = std::cosh(w);
    return std::exp(half_trace) * (ComplexMatrix2::diagonal(ch, ch) + sinhc * traceless);
}

double antilinear_symmetry_residual(const ComplexMatrix2& h, const ComplexMatrix2& m)
{
    return distance(m * h.conj() * m.inverse(), h);
}

} // namespace gpue
