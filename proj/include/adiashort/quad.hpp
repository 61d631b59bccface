#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <utility>

namespace adiashort::quad {

// Adaptive Gauss-Kronrod on a finite interval.  tol is a relative target on
// the returned value.
template <class F>
double integrate(F&& f, double a, double b, double tol) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, 15, tol);
}

}  // namespace adiashort::quad
