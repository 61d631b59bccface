#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "adiashort/frame.hpp"

namespace adiashort {

// gamma = sign * 2*thetaDot/sin(2*theta), reduced analytically per model so
// the closed-form values (e.g. -1/omega at T=0 for LZ) come out exact:
//   LZ:  -sign / sqrt(omega^2 + T^2)
//   AE:  -sign * delta*cosh(t) / sqrt(alpha^2 + delta^2*sinh(t)^2)
// Tabulated drives use the generic rule with sin(2*theta) = Omega/sqrt(Omega^2+Delta^2).
inline double gammaShortcut(const DriveModel& model, double t, int sign = +1) {
    return std::visit(
        detail::Overloaded{
            [&](const LandauZenerDrive& d) { return -sign / std::hypot(d.omega, t); },
            [&](const AllenEberlyDrive& d) {
                return -sign * d.delta * std::cosh(t) /
                       std::hypot(d.alpha, d.delta * std::sinh(t));
            },
            [&](const TabulatedDrive&) {
                const double om = driveOmega(model, t);
                if (!(om > 0.0))
                    throw std::domain_error("gammaShortcut: coupling vanishes at t=" +
                                            std::to_string(t));
                const double sin2theta = om / std::hypot(om, driveDelta(model, t));
                return sign * 2.0 * mixingAngleRate(model, t) / sin2theta;
            }},
        model);
}

struct GammaOff {};
struct GammaShortcut {
    int sign = +1;
};
struct GammaCustom {
    CubicSpline profile;
};

// How the imaginary diagonal term is chosen.  gamma is forced to zero outside
// the truncation window; an unset window means no truncation.
struct GammaPolicy {
    std::variant<GammaOff, GammaShortcut, GammaCustom> kind;
    std::optional<Window> window;

    static GammaPolicy off() { return {GammaOff{}, std::nullopt}; }
    static GammaPolicy shortcut(int sign = +1, std::optional<Window> w = std::nullopt) {
        if (sign != 1 && sign != -1)
            throw std::invalid_argument("GammaPolicy: sign must be +1 or -1");
        return {GammaShortcut{sign}, w};
    }
    static GammaPolicy custom(CubicSpline profile, std::optional<Window> w = std::nullopt) {
        return {GammaCustom{std::move(profile)}, w};
    }

    bool hermitian() const { return std::holds_alternative<GammaOff>(kind); }
    int shortcutSign() const {
        const auto* s = std::get_if<GammaShortcut>(&kind);
        return s ? s->sign : 0;
    }
};

inline double gammaValue(const DriveModel& model, const GammaPolicy& policy, double t) {
    if (policy.window && !policy.window->contains(t)) return 0.0;
    return std::visit(detail::Overloaded{
                          [](const GammaOff&) { return 0.0; },
                          [&](const GammaShortcut& s) { return gammaShortcut(model, t, s.sign); },
                          [&](const GammaCustom& c) { return c.profile(t); }},
                      policy.kind);
}

// Synthesized gain/loss profile on a sample grid.
struct ShortcutProfile {
    std::vector<double> times;
    std::vector<double> gamma;
    int sign = +1;
    double peakMagnitude = 0.0;
};

inline ShortcutProfile synthesizeProfile(const DriveModel& model, const Window& w, int n,
                                         int sign = +1) {
    if (!(w.t0 < w.t1))
        throw std::invalid_argument("synthesizeProfile: window must satisfy tI < tF");
    if (n < 2) throw std::invalid_argument("synthesizeProfile: need at least 2 samples");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("synthesizeProfile: sign must be +1 or -1");
    ShortcutProfile p;
    p.sign = sign;
    p.times = uniformGrid(w, n);
    p.gamma.reserve(p.times.size());
    for (double t : p.times) {
        const double g = gammaShortcut(model, t, sign);
        p.gamma.push_back(g);
        p.peakMagnitude = std::max(p.peakMagnitude, std::abs(g));
    }
    return p;
}

// Sampled health report for a drive on a window: coupling positivity, parity
// of Omega (even) and Delta (odd), and whether the endpoint-norm-unity
// guarantee applies (even Omega, odd Delta, symmetric window).
struct ModelDiagnostics {
    double minCoupling = 0.0;
    bool couplingPositive = false;
    bool omegaEven = false;
    bool deltaOdd = false;
    bool windowSymmetric = false;
    bool normGuarantee = false;
    double maxAbsGamma = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> warnings;
};

inline ModelDiagnostics validateModel(const DriveModel& model, const Window& w, int n = 1001) {
    if (!(w.t0 < w.t1)) throw std::invalid_argument("validateModel: window must satisfy tI < tF");
    if (n < 2) n = 2;
    ModelDiagnostics d;
    d.windowSymmetric = w.symmetric();

    const auto grid = uniformGrid(w, n);
    d.minCoupling = std::numeric_limits<double>::infinity();
    for (double t : grid) d.minCoupling = std::min(d.minCoupling, driveOmega(model, t));
    d.couplingPositive = d.minCoupling > 0.0;
    if (!d.couplingPositive)
        d.warnings.push_back("coupling vanishes inside the window; shortcut not synthesizable");

    // Parity classification over (t, -t) pairs in the overlap of the window
    // with its mirror image; relative tolerance 1e-9.
    const double reach = std::min(-w.t0, w.t1);
    d.omegaEven = true;
    d.deltaOdd = true;
    if (reach > 0.0) {
        constexpr double tol = 1e-9;
        const int pairs = n / 2 + 1;
        for (int k = 0; k < pairs; ++k) {
            const double t = (reach * (k + 1)) / pairs;
            const double om1 = driveOmega(model, t), om2 = driveOmega(model, -t);
            const double de1 = driveDelta(model, t), de2 = driveDelta(model, -t);
            if (std::abs(om1 - om2) > tol * std::max({std::abs(om1), std::abs(om2), 1e-300}))
                d.omegaEven = false;
            if (std::abs(de1 + de2) > tol * std::max({std::abs(de1), std::abs(de2), 1e-300}))
                d.deltaOdd = false;
        }
    }
    if (!d.omegaEven) d.warnings.push_back("Omega is not even in t");
    if (!d.deltaOdd) d.warnings.push_back("Delta is not odd in t");
    if (!d.windowSymmetric) d.warnings.push_back("window is not symmetric about t=0");

    d.normGuarantee = d.couplingPositive && d.omegaEven && d.deltaOdd && d.windowSymmetric;

    if (d.couplingPositive) {
        double peak = 0.0;
        for (double t : grid) peak = std::max(peak, std::abs(gammaShortcut(model, t, +1)));
        d.maxAbsGamma = peak;
    }
    return d;
}

namespace detail {
// Integrand of the real part of the log-amplitude: gamma*cos(2*theta)/2.
inline double gammaCosTerm(const DriveModel& model, const GammaPolicy& policy, double t) {
    const double g = gammaValue(model, policy, t);
    if (g == 0.0) return 0.0;
    const double om = driveOmega(model, t);
    const double de = driveDelta(model, t);
    return 0.5 * g * de / std::hypot(om, de);
}
}  // namespace detail

}  // namespace adiashort
