#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace adiashort {

inline constexpr const char* kVersion = "1.0.0";

using Complex = std::complex<double>;

// Amplitudes of the bare states |1>, |2>.  No unit-norm invariant is imposed:
// the non-Hermitian dynamics does not conserve the norm mid-run.
struct StateVector {
    Complex c1{};
    Complex c2{};

    double p1() const { return std::norm(c1); }
    double p2() const { return std::norm(c2); }
    double normValue() const { return std::sqrt(p1() + p2()); }
    bool finite() const {
        return std::isfinite(c1.real()) && std::isfinite(c1.imag()) &&
               std::isfinite(c2.real()) && std::isfinite(c2.imag());
    }
};

// Amplitudes in the instantaneous-eigenstate basis |phi_minus>, |phi_plus>.
struct AdiabaticAmplitudes {
    Complex aMinus{};
    Complex aPlus{};
};

struct Window {
    double t0;
    double t1;

    double span() const { return t1 - t0; }
    bool contains(double t) const { return t >= t0 && t <= t1; }
    bool symmetric() const {
        return std::abs(t0 + t1) <= 1e-12 * std::max({1.0, std::abs(t0), std::abs(t1)});
    }
};

// Shared sample grid: endpoints exact, interior points bit-reproducible across
// call sites (k*span is exact for integer k, span up to 2^53).
inline std::vector<double> uniformGrid(const Window& w, int n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    const double span = w.span();
    for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = w.t0 + (span * k) / (n - 1);
    t.front() = w.t0;
    t.back() = w.t1;
    return t;
}

namespace detail {
template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace detail

}  // namespace adiashort
