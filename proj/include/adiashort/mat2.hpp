#pragma once

#include <cmath>
#include <utility>

#include "adiashort/types.hpp"

namespace adiashort {

// Row-major complex 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    Complex a{}, b{}, c{}, d{};

    Complex trace() const { return a + d; }
    Complex det() const { return a * d - b * c; }

    StateVector apply(const StateVector& v) const {
        return {a * v.c1 + b * v.c2, c * v.c1 + d * v.c2};
    }

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator*(Complex s, const Mat2& m) {
        return {s * m.a, s * m.b, s * m.c, s * m.d};
    }
    friend Mat2 operator*(const Mat2& m, Complex s) { return s * m; }
};

// Eigenvalues mu -+ q with mu = tr/2, q = sqrt(mu^2 - det).
inline std::pair<Complex, Complex> eigenvalues2(const Mat2& m) {
    const Complex mu = 0.5 * m.trace();
    const Complex q = std::sqrt(mu * mu - m.det());
    return {mu - q, mu + q};
}

// Closed-form exponential.  Split M = mu*I + B with mu = tr/2; the traceless
// part satisfies B^2 = q^2*I, q^2 = dd^2 + bc, so
//   exp(M) = e^mu (cosh(q) I + sinh(q)/q B).
// Both cosh(q) and sinh(q)/q are even in q, so the sqrt branch is irrelevant;
// the series takes over near q = 0.
inline Mat2 expm(const Mat2& m) {
    const Complex mu = 0.5 * (m.a + m.d);
    const Complex dd = 0.5 * (m.a - m.d);
    const Complex q2 = dd * dd + m.b * m.c;
    const Complex q = std::sqrt(q2);
    Complex ch, shc;
    if (std::abs(q) < 1e-4) {
        ch = 1.0 + q2 * (0.5 + q2 / 24.0);
        shc = 1.0 + q2 * (1.0 / 6.0 + q2 / 120.0);
    } else {
        ch = std::cosh(q);
        shc = std::sinh(q) / q;
    }
    const Complex e = std::exp(mu);
    return {e * (ch + shc * dd), e * (shc * m.b),
            e * (shc * m.c), e * (ch - shc * dd)};
}

}  // namespace adiashort
