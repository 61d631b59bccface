#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "adiashort/frame.hpp"
#include "adiashort/hamiltonian.hpp"
#include "adiashort/mat2.hpp"
#include "adiashort/ode.hpp"
#include "adiashort/quad.hpp"
#include "adiashort/shortcut.hpp"
#include "adiashort/types.hpp"

namespace adiashort {

enum class StartKind { Bare1, Bare2, AdiabaticExact, Custom };

// AdiabaticExact starts in the adiabatic eigenstate that the decoupling
// protocol isolates; the bare kinds populate a single diabatic level.
struct InitialState {
    StartKind kind = StartKind::AdiabaticExact;
    StateVector custom{};

    static InitialState bare1() { return {StartKind::Bare1, {}}; }
    static InitialState bare2() { return {StartKind::Bare2, {}}; }
    static InitialState adiabaticExact() { return {StartKind::AdiabaticExact, {}}; }
    static InitialState customState(StateVector s) { return {StartKind::Custom, s}; }
};

struct SimulationConfig {
    DriveModel model = LandauZenerDrive{1.0};
    GammaPolicy policy = GammaPolicy::off();
    Window window{-15.0, 15.0};
    InitialState start = InitialState::adiabaticExact();
    std::size_t samples = 2001;
    double relTol = 1e-10;
    double absTol = 1e-12;
};

struct TrajectoryRow {
    double t = 0.0;
    Complex c1{};
    Complex c2{};
    double gamma = 0.0;
    double theta = 0.0;

    double p1() const { return std::norm(c1); }
    double p2() const { return std::norm(c2); }
    double norm() const { return std::sqrt(p1() + p2()); }
    AdiabaticAmplitudes adiabatic() const { return toAdiabaticBasis({c1, c2}, theta); }
};

struct TrajectoryRecord {
    SimulationConfig config;
    std::vector<TrajectoryRow> rows;
    ode::StepStats stats;
};

inline void validateConfig(const SimulationConfig& cfg) {
    if (!(cfg.relTol > 0.0) || !std::isfinite(cfg.relTol))
        throw std::invalid_argument("relative tolerance must be positive and finite");
    if (!(cfg.absTol > 0.0) || !std::isfinite(cfg.absTol))
        throw std::invalid_argument("absolute tolerance must be positive and finite");
    if (cfg.samples < 2) throw std::invalid_argument("need at least 2 samples");
    if (!std::isfinite(cfg.window.t0) || !std::isfinite(cfg.window.t1) ||
        !(cfg.window.t0 < cfg.window.t1))
        throw std::invalid_argument("time window must be finite with t0 < t1");
    if (cfg.start.kind == StartKind::Custom && !cfg.start.custom.finite())
        throw std::invalid_argument("custom initial state must be finite");
}

inline StateVector resolveInitialState(const SimulationConfig& cfg) {
    switch (cfg.start.kind) {
        case StartKind::Bare1: return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
        case StartKind::Bare2: return {Complex(0.0, 0.0), Complex(1.0, 0.0)};
        case StartKind::AdiabaticExact: {
            const double th = mixingAngle(cfg.model, cfg.window.t0);
            // phi_+ = (sin th, cos th): the adiabatic level the decoupling
            // protocol isolates.
            return {Complex(std::sin(th), 0.0), Complex(std::cos(th), 0.0)};
        }
        case StartKind::Custom: return cfg.start.custom;
    }
    throw std::logic_error("unreachable start kind");
}

namespace detail {

// The adiabatic frame needs Omega > 0 throughout; scan the run window up
// front so failures surface before integration starts.
inline void requirePositiveCoupling(const DriveModel& model, const Window& w) {
    if (const auto* tab = std::get_if<TabulatedDrive>(&model)) {
        if (tab->omega.xmin() > w.t0 || tab->omega.xmax() < w.t1)
            throw std::invalid_argument("tabulated drive does not cover the run window");
    }
    constexpr std::size_t kProbe = 513;
    for (double t : uniformGrid(w, kProbe)) {
        if (!(driveOmega(model, t) > 0.0))
            throw std::domain_error("coupling vanishes at t=" + std::to_string(t));
    }
}

}  // namespace detail

// Integrates the bare-basis Schrodinger equation i c' = H(t) c over the run
// window, sampling the trajectory on a uniform grid.
inline TrajectoryRecord integrate(const SimulationConfig& cfg) {
    validateConfig(cfg);
    detail::requirePositiveCoupling(cfg.model, cfg.window);

    TrajectoryRecord rec;
    rec.config = cfg;
    rec.rows.reserve(cfg.samples);

    const auto grid = uniformGrid(cfg.window, cfg.samples);

    auto rhs = [&](double t, const ode::State<2>& y) {
        const Mat2 H = hamiltonian(cfg.model, cfg.policy, t);
        const auto hc = H.apply({y[0], y[1]});
        constexpr Complex mi(0.0, -1.0);
        return ode::State<2>{mi * hc.c1, mi * hc.c2};
    };
    auto sink = [&](double t, const ode::State<2>& y) {
        rec.rows.push_back({t, y[0], y[1], gammaValue(cfg.model, cfg.policy, t),
                            mixingAngle(cfg.model, t)});
    };

    // Restart the step controller where the gamma window switches on or off.
    std::vector<double> breakpoints;
    if (cfg.policy.window) {
        for (double edge : {cfg.policy.window->t0, cfg.policy.window->t1})
            if (edge > cfg.window.t0 && edge < cfg.window.t1) breakpoints.push_back(edge);
    }

    const StateVector y0 = resolveInitialState(cfg);
    ode::StepperOptions opt;
    opt.relTol = cfg.relTol;
    opt.absTol = cfg.absTol;
    ode::integrateBroken<2>(rhs, cfg.window.t0, cfg.window.t1, ode::State<2>{y0.c1, y0.c2},
                            breakpoints, opt, grid, sink, rec.stats);
    return rec;
}

// Second-order reference propagator: exact matrix exponential of H frozen at
// each slice midpoint.  Slow but has no adaptive machinery, so it makes an
// independent cross-check for the stepper.
inline StateVector propagatorOracle(const SimulationConfig& cfg, std::size_t nSteps) {
    validateConfig(cfg);
    detail::requirePositiveCoupling(cfg.model, cfg.window);
    if (nSteps < 1) throw std::invalid_argument("propagatorOracle: need nSteps >= 1");

    const double span = cfg.window.span();
    const double h = span / static_cast<double>(nSteps);
    StateVector y = resolveInitialState(cfg);
    constexpr Complex mi(0.0, -1.0);
    for (std::size_t k = 0; k < nSteps; ++k) {
        const double tm = cfg.window.t0 + (static_cast<double>(k) + 0.5) * h;
        const Mat2 H = hamiltonian(cfg.model, cfg.policy, tm);
        y = expm(H * (mi * h)).apply(y);
    }
    return y;
}

// Closed-form exponent for the surviving adiabatic amplitude under the
// decoupling protocol: a_+(t1) = exp(-B - iA) with
//   A = integral of lambda_+  (dynamical phase, real)
//   B = integral of (gamma/2) cos 2theta  (parity-sensitive amplitude drift)
inline Complex closedFormAPlusExponent(const DriveModel& model, const GammaPolicy& policy,
                                       const Window& w, double quadTol = 1e-12) {
    const double A = quad::integrate(
        [&](double t) { return adiabaticEigenvalues(model, t).second; }, w.t0, w.t1, quadTol);
    const double B = quad::integrate(
        [&](double t) { return detail::gammaCosTerm(model, policy, t); }, w.t0, w.t1, quadTol);
    return Complex(-B, -A);
}

inline Complex closedFormAPlusExponent(const DriveModel& model, const Window& w,
                                       double quadTol = 1e-12) {
    return closedFormAPlusExponent(model, GammaPolicy::shortcut(+1, w), w, quadTol);
}

inline Complex closedFormAPlus(const DriveModel& model, const Window& w,
                               double quadTol = 1e-12) {
    return std::exp(closedFormAPlusExponent(model, w, quadTol));
}

}  // namespace adiashort
