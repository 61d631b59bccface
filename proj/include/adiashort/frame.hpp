#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "adiashort/drive.hpp"

namespace adiashort {

// Snapshot of the adiabatic frame at one instant.
struct AdiabaticFrame {
    double theta;
    double thetaDot;
    double lambdaMinus;
    double lambdaPlus;
};

// Continuous branch of theta = (1/2) atan2(Omega, Delta) in (0, pi/2):
// theta -> pi/2 as Delta -> -inf and theta -> 0 as Delta -> +inf.
inline double mixingAngle(const DriveModel& model, double t) {
    const double om = driveOmega(model, t);
    if (!(om > 0.0))
        throw std::domain_error("mixingAngle: coupling vanishes at t=" + std::to_string(t));
    return 0.5 * std::atan2(om, driveDelta(model, t));
}

// d(theta)/dt, analytic per model.  The generic quotient rule
// (OmegaDot*Delta - Omega*DeltaDot) / (2 (Omega^2 + Delta^2)) handles
// tabulated drives; LZ and AE reduce to closed forms.
inline double mixingAngleRate(const DriveModel& model, double t) {
    return std::visit(
        detail::Overloaded{
            [&](const LandauZenerDrive& d) {
                return -d.omega / (2.0 * (d.omega * d.omega + t * t));
            },
            [&](const AllenEberlyDrive& d) {
                const double sh = std::sinh(t);
                return -d.alpha * d.delta * std::cosh(t) /
                       (2.0 * (d.alpha * d.alpha + d.delta * d.delta * sh * sh));
            },
            [&](const TabulatedDrive&) {
                const double om = driveOmega(model, t);
                if (!(om > 0.0))
                    throw std::domain_error("mixingAngleRate: coupling vanishes at t=" +
                                            std::to_string(t));
                const double de = driveDelta(model, t);
                return (driveOmegaDot(model, t) * de - om * driveDeltaDot(model, t)) /
                       (2.0 * (om * om + de * de));
            }},
        model);
}

// lambda_pm = (Delta -+ sqrt(Omega^2 + Delta^2)) / 2.
inline std::pair<double, double> adiabaticEigenvalues(const DriveModel& model, double t) {
    const double om = driveOmega(model, t);
    const double de = driveDelta(model, t);
    const double root = std::hypot(om, de);
    return {0.5 * (de - root), 0.5 * (de + root)};
}

inline AdiabaticFrame adiabaticFrame(const DriveModel& model, double t) {
    const auto [lm, lp] = adiabaticEigenvalues(model, t);
    return {mixingAngle(model, t), mixingAngleRate(model, t), lm, lp};
}

// a = R(theta)^-1 c with R = [[cos, sin], [-sin, cos]] (orthogonal, so the
// inverse is the transpose).
inline AdiabaticAmplitudes toAdiabaticBasis(const StateVector& c, double theta) {
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    return {c.c1 * cs - c.c2 * sn, c.c1 * sn + c.c2 * cs};
}

inline StateVector fromAdiabaticBasis(const AdiabaticAmplitudes& a, double theta) {
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    return {a.aMinus * cs + a.aPlus * sn, -a.aMinus * sn + a.aPlus * cs};
}

}  // namespace adiashort
