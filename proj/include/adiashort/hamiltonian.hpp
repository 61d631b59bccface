#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "adiashort/mat2.hpp"
#include "adiashort/shortcut.hpp"

namespace adiashort {

// Bare-basis Hamiltonian (hbar = 1):
//   [[ i*gamma/2,        Omega/2          ],
//    [ Omega/2,          Delta - i*gamma/2]]
inline Mat2 hamiltonian(const DriveModel& model, const GammaPolicy& policy, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("hamiltonian: t must be finite");
    const double om = driveOmega(model, t);
    const double de = driveDelta(model, t);
    const double g = gammaValue(model, policy, t);
    return {Complex(0.0, 0.5 * g), Complex(0.5 * om, 0.0),
            Complex(0.5 * om, 0.0), Complex(de, -0.5 * g)};
}

// Diagonal entries of the bare Hamiltonian: epsilon1 = i*gamma/2,
// epsilon2 = Delta - i*gamma/2.
inline std::pair<Complex, Complex> bareEnergies(const DriveModel& model,
                                                const GammaPolicy& policy, double t) {
    const double g = gammaValue(model, policy, t);
    return {Complex(0.0, 0.5 * g), Complex(driveDelta(model, t), -0.5 * g)};
}

// Adiabatic-frame Hamiltonian:
//   [[ lambda- + i*gamma*cos2theta/2,  i*gamma*sin2theta/2 - i*thetaDot ],
//    [ i*gamma*sin2theta/2 + i*thetaDot,  lambda+ - i*gamma*cos2theta/2 ]]
// With the Shortcut(+1) gamma the (1,2) entry cancels to zero and the (2,1)
// entry becomes 2i*thetaDot; the cancellation is computed, not special-cased.
inline Mat2 adiabaticHamiltonian(const DriveModel& model, const GammaPolicy& policy, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("adiabaticHamiltonian: t must be finite");
    const double om = driveOmega(model, t);
    if (!(om > 0.0))
        throw std::domain_error("adiabaticHamiltonian: coupling vanishes at t=" +
                                std::to_string(t));
    const double de = driveDelta(model, t);
    const double g = gammaValue(model, policy, t);
    const double thetaDot = mixingAngleRate(model, t);
    const double root = std::hypot(om, de);
    const double sin2theta = om / root;
    const double cos2theta = de / root;
    const double lm = 0.5 * (de - root);
    const double lp = 0.5 * (de + root);
    return {Complex(lm, 0.5 * g * cos2theta),
            Complex(0.0, 0.5 * g * sin2theta - thetaDot),
            Complex(0.0, 0.5 * g * sin2theta + thetaDot),
            Complex(lp, -0.5 * g * cos2theta)};
}

}  // namespace adiashort
