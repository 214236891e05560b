// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <string_view>

namespace gpue {

using Complex = std::complex<double>;

/// Tolerance used by the boolean predicates unless the caller passes one.
inline constexpr double kDefaultTolerance = 1e-10;

/// Fixed-size 2x2 complex matrix, row-major entries.
struct ComplexMatrix2 {
    Complex m11{}, m12{}, m21{}, m22{};

    static constexpr ComplexMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr ComplexMatrix2 zero() { return {}; }
    static constexpr ComplexMatrix2 diagonal(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

    Complex trace() const { return m11 + m22; }
    Complex det() const { return m11 * m22 - m12 * m21; }

    /// Conjugate transpose.
    ComplexMatrix2 adjoint() const { return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)}; }
    /// Entrywise complex conjugate.
    ComplexMatrix2 conj() const { return {std::conj(m11), std::conj(m12), std::conj(m21), std::conj(m22)}; }
    ComplexMatrix2 transpose() const { return {m11, m21, m12, m22}; }

    /// Throws DomainError when the determinant is zero relative to the entry scale.
    ComplexMatrix2 inverse() const;

    /// Maximum entrywise modulus; the norm used by every tolerance check.
    double max_norm() const;

    ComplexMatrix2& operator+=(const ComplexMatrix2& o);
    ComplexMatrix2& operator-=(const ComplexMatrix2& o);
    ComplexMatrix2& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix2&, const ComplexMatrix2&) = default;
};

ComplexMatrix2 operator+(ComplexMatrix2 a, const ComplexMatrix2& b);
ComplexMatrix2 operator-(ComplexMatrix2 a, const ComplexMatrix2& b);
ComplexMatrix2 operator-(const ComplexMatrix2& a);
ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b);
ComplexMatrix2 operator*(Complex s, ComplexMatrix2 a);
ComplexMatrix2 operator*(ComplexMatrix2 a, Complex s);

/// Commutator [a, b] = ab - ba.
ComplexMatrix2 commutator(const ComplexMatrix2& a, const ComplexMatrix2& b);

/// max_norm(a - b)
double distance(const ComplexMatrix2& a, const ComplexMatrix2& b);

struct Vector2 {
    Complex x1{}, x2{};
    friend bool operator==(const Vector2&, const Vector2&) = default;
};

Vector2 operator*(const ComplexMatrix2& m, const Vector2& v);

/// x^dagger y
Complex dot(const Vector2& x, const Vector2& y);

enum class MetricKind { delta, eta, identity, custom };

std::string_view to_string(MetricKind kind);

/// An invertible matrix defining the indefinite inner product <x|eta y>.
class Metric {
public:
    /// [[0,-1],[1,0]]; squares to -I. The metric of the pseudo-Hermitian family.
    static Metric delta();
    /// [[0,1],[1,0]]; squares to I. The metric of the eigenvector matrix.
    static Metric eta();
    static Metric identity();
    /// Throws DomainError if `m` is singular.
    static Metric custom(const ComplexMatrix2& m);

    const ComplexMatrix2& matrix() const noexcept { return matrix_; }
    const ComplexMatrix2& inverse() const noexcept { return inverse_; }
    MetricKind kind() const noexcept { return kind_; }

private:
    Metric(const ComplexMatrix2& m, MetricKind kind);

    ComplexMatrix2 matrix_;
    ComplexMatrix2 inverse_;
    MetricKind kind_;
};

/// The pseudo-Hermitian family [[a, -ib], [ic, a]] with real a, b, c.
ComplexMatrix2 family_matrix(double a, double b, double c);

/// eta^{-1} A^dagger eta. A is pseudo-Hermitian iff this returns A.
ComplexMatrix2 pseudo_adjoint(const ComplexMatrix2& a, const Metric& eta);

/// max_norm(eta^{-1} A^dagger eta - A)
double pseudo_hermiticity_residual(const ComplexMatrix2& a, const Metric& eta);

bool is_pseudo_hermitian(const ComplexMatrix2& a, const Metric& eta, double tol = kDefaultTolerance);

/// max_norm(D^dagger eta D - eta)
double pseudo_unitarity_residual(const ComplexMatrix2& d, const Metric& eta);

bool is_pseudo_unitary(const ComplexMatrix2& d, const Metric& eta, double tol = kDefaultTolerance);

/// <x|eta y> = x^dagger (eta y)
Complex pseudo_inner(const Vector2& x, const Vector2& y, const Metric& eta);

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
ComplexMatrix2 expm(const ComplexMatrix2& a);

/// Closed-form exponential from the Cayley-Hamilton reduction exp(A) =
/// e^{tr/2} (cosh(w) I + sinh(w)/w (A - tr/2 I)), w^2 = (tr/2)^2 - det.
/// Used to cross-check expm; not the reference path.
ComplexMatrix2 expm_closed_form(const ComplexMatrix2& a);

/// max_norm(M conj(H) M^{-1} - H): residual of invariance under the
/// antilinear map "apply M after complex conjugation". Throws DomainError if
/// M is singular.
double antilinear_symmetry_residual(const ComplexMatrix2& h, const ComplexMatrix2& m);

} // namespace gpue
