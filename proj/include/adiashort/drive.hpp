#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "adiashort/spline.hpp"
#include "adiashort/types.hpp"

namespace adiashort {

// Linear level crossing in sweep-rate units: Omega(T) = omega, Delta(T) = T.
struct LandauZenerDrive {
    double omega;

    explicit LandauZenerDrive(double w) : omega(w) {
        if (!std::isfinite(w) || !(w > 0.0))
            throw std::invalid_argument("LandauZenerDrive: omega must be finite and > 0");
    }
};

// Pulse-and-chirp model in pulse-duration units:
// Omega(t) = alpha*sech(t), Delta(t) = delta*tanh(t).
struct AllenEberlyDrive {
    double alpha;
    double delta;

    AllenEberlyDrive(double a, double d) : alpha(a), delta(d) {
        if (!std::isfinite(a) || !(a > 0.0))
            throw std::invalid_argument("AllenEberlyDrive: alpha must be finite and > 0");
        if (!std::isfinite(d) || d < 0.0)
            throw std::invalid_argument("AllenEberlyDrive: delta must be finite and >= 0");
    }
};

// Drive sampled on a grid; cubic interpolation with analytic interpolant
// derivatives (the mixing-angle rate needs a derivative).
struct TabulatedDrive {
    CubicSpline omega;
    CubicSpline delta;

    TabulatedDrive(std::vector<double> t, std::vector<double> om, std::vector<double> de)
        : omega(t, std::move(om)), delta(std::move(t), std::move(de)) {}
};

using DriveModel = std::variant<LandauZenerDrive, AllenEberlyDrive, TabulatedDrive>;

inline double driveOmega(const DriveModel& m, double t) {
    return std::visit(detail::Overloaded{
                          [&](const LandauZenerDrive& d) { return d.omega; },
                          [&](const AllenEberlyDrive& d) { return d.alpha / std::cosh(t); },
                          [&](const TabulatedDrive& d) { return d.omega(t); }},
                      m);
}

inline double driveDelta(const DriveModel& m, double t) {
    return std::visit(detail::Overloaded{
                          [&](const LandauZenerDrive&) { return t; },
                          [&](const AllenEberlyDrive& d) { return d.delta * std::tanh(t); },
                          [&](const TabulatedDrive& d) { return d.delta(t); }},
                      m);
}

inline double driveOmegaDot(const DriveModel& m, double t) {
    return std::visit(detail::Overloaded{
                          [&](const LandauZenerDrive&) { return 0.0; },
                          [&](const AllenEberlyDrive& d) {
                              const double sech = 1.0 / std::cosh(t);
                              return -d.alpha * sech * std::tanh(t);
                          },
                          [&](const TabulatedDrive& d) { return d.omega.derivative(t); }},
                      m);
}

inline double driveDeltaDot(const DriveModel& m, double t) {
    return std::visit(detail::Overloaded{
                          [&](const LandauZenerDrive&) { return 1.0; },
                          [&](const AllenEberlyDrive& d) {
                              const double sech = 1.0 / std::cosh(t);
                              return d.delta * sech * sech;
                          },
                          [&](const TabulatedDrive& d) { return d.delta.derivative(t); }},
                      m);
}

inline const char* driveName(const DriveModel& m) {
    return std::visit(detail::Overloaded{
                          [](const LandauZenerDrive&) { return "lz"; },
                          [](const AllenEberlyDrive&) { return "ae"; },
                          [](const TabulatedDrive&) { return "table"; }},
                      m);
}

}  // namespace adiashort
