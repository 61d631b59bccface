#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "adiashort/ode.hpp"
#include "adiashort/types.hpp"

using namespace adiashort;
using ode::State;

namespace {

constexpr Complex kI(0.0, 1.0);

struct Run {
    State<1> y{};
    ode::StepStats stats{};
    std::vector<double> sampleT;
    std::vector<Complex> sampleY;
};

template <class Rhs>
Run runScalar(Rhs&& rhs, double t0, double t1, Complex y0, const ode::StepperOptions& opt,
              const std::vector<double>& samples = {}) {
    Run r;
    auto emit = [&](double t, const State<1>& y) {
        r.sampleT.push_back(t);
        r.sampleY.push_back(y[0]);
    };
    r.y = ode::integrateSegment<1>(rhs, t0, t1, State<1>{y0}, opt, samples, emit, r.stats);
    return r;
}

}  // namespace

TEST_CASE("stepper: exponential decay at default tolerances") {
    const auto r = runScalar([](double, const State<1>& y) { return State<1>{-y[0]}; }, 0.0, 5.0,
                             Complex(1.0, 0.0), {});
    CHECK(std::abs(r.y[0] - std::exp(-5.0)) < 1e-10);
    CHECK(r.stats.accepted > 0);
    CHECK(r.stats.rhsEvals == 2 + 6 * (r.stats.accepted + r.stats.rejected));
}

TEST_CASE("stepper: pure rotation keeps unit magnitude") {
    const auto r = runScalar([](double, const State<1>& y) { return State<1>{kI * y[0]}; }, 0.0,
                             2.0 * M_PI, Complex(1.0, 0.0), {});
    CHECK(std::abs(r.y[0] - Complex(1.0, 0.0)) < 1e-8);
    CHECK(std::abs(std::abs(r.y[0]) - 1.0) < 1e-9);
}

TEST_CASE("stepper: dense output tracks the analytic solution between steps") {
    std::vector<double> samples(101);
    for (int k = 0; k <= 100; ++k) samples[k] = 10.0 * k / 100.0;
    const auto r = runScalar([](double, const State<1>& y) { return State<1>{kI * y[0]}; }, 0.0,
                             10.0, Complex(1.0, 0.0), {}, samples);
    REQUIRE(r.sampleT.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(r.sampleT[i] == samples[i]);
        CHECK(std::abs(r.sampleY[i] - std::exp(kI * samples[i])) < 1e-8);
    }
    // Grid endpoints are pinned to the stepper states bitwise.
    CHECK(r.sampleY.front() == Complex(1.0, 0.0));
    CHECK(r.sampleY.back() == r.y[0]);
}

TEST_CASE("stepper: tighter tolerances give smaller errors") {
    auto errAt = [&](double relTol) {
        ode::StepperOptions opt;
        opt.relTol = relTol;
        opt.absTol = relTol * 1e-2;
        const auto r = runScalar([](double, const State<1>& y) { return State<1>{kI * y[0]}; },
                                 0.0, 50.0, Complex(1.0, 0.0), opt);
        return std::abs(r.y[0] - std::exp(kI * 50.0));
    };
    const double e5 = errAt(1e-5);
    const double e7 = errAt(1e-7);
    const double e9 = errAt(1e-9);
    const double e11 = errAt(1e-11);
    CHECK(e5 > e9);
    CHECK(e7 > e11);
    CHECK(e9 < 1e-6);
    CHECK(e11 < 1e-8);
}

TEST_CASE("stepper: argument validation") {
    ode::StepperOptions opt;
    ode::StepStats stats;
    auto rhs = [](double, const State<1>& y) { return State<1>{y[0]}; };
    auto emit = [](double, const State<1>&) {};
    CHECK_THROWS_AS(
        ode::integrateSegment<1>(rhs, 1.0, 1.0, State<1>{Complex(1.0, 0.0)}, opt, {}, emit, stats),
        std::invalid_argument);
    CHECK_THROWS_AS(
        ode::integrateSegment<1>(rhs, 2.0, 1.0, State<1>{Complex(1.0, 0.0)}, opt, {}, emit, stats),
        std::invalid_argument);
    opt.relTol = 0.0;
    CHECK_THROWS_AS(
        ode::integrateSegment<1>(rhs, 0.0, 1.0, State<1>{Complex(1.0, 0.0)}, opt, {}, emit, stats),
        std::invalid_argument);
}

TEST_CASE("stepper: step limit reported with position") {
    ode::StepperOptions opt;
    opt.maxSteps = 50;
    bool thrown = false;
    try {
        runScalar([](double, const State<1>& y) { return State<1>{kI * y[0]}; }, 0.0, 1e6,
                  Complex(1.0, 0.0), opt);
    } catch (const ode::IntegrationError& e) {
        thrown = true;
        CHECK(std::string(e.what()).find("step limit") != std::string::npos);
        CHECK(e.where() >= 0.0);
        CHECK(e.where() < 1e6);
    }
    CHECK(thrown);
}

TEST_CASE("stepper: a wall of non-finite right-hand sides forces underflow") {
    // rhs turns NaN past t=0.5; the controller must shrink the step until it
    // underflows and report the wall position instead of looping.
    auto rhs = [](double t, const State<1>& y) {
        if (t > 0.5) return State<1>{Complex(std::numeric_limits<double>::quiet_NaN(), 0.0)};
        return State<1>{y[0]};
    };
    bool thrown = false;
    try {
        runScalar(rhs, 0.0, 1.0, Complex(1.0, 0.0), {});
    } catch (const ode::IntegrationError& e) {
        thrown = true;
        CHECK(std::string(e.what()).find("underflow") != std::string::npos);
        CHECK(e.where() == Catch::Approx(0.5).margin(1e-6));
    }
    CHECK(thrown);
}

TEST_CASE("broken integration: restart at a right-hand-side discontinuity") {
    // y' = -y below t=1 and +y above; the two halves cancel exactly.
    auto rhs = [](double t, const State<1>& y) {
        return State<1>{(t < 1.0 ? -1.0 : 1.0) * y[0]};
    };
    const std::vector<double> breakpoints{1.0};
    const std::vector<double> samples{0.0, 0.5, 1.0, 1.5, 2.0};
    ode::StepperOptions opt;
    ode::StepStats stats;
    std::vector<double> ts;
    std::vector<Complex> ys;
    auto emit = [&](double t, const State<1>& y) {
        ts.push_back(t);
        ys.push_back(y[0]);
    };
    const auto y = ode::integrateBroken<1>(rhs, 0.0, 2.0, State<1>{Complex(1.0, 0.0)},
                                           breakpoints, opt, samples, emit, stats);
    // Global error runs a small multiple of relTol; a restart bug would be O(1).
    CHECK(std::abs(y[0] - Complex(1.0, 0.0)) < 5e-9);
    CHECK(stats.restarts == 1);
    CHECK(stats.rhsEvals == 4 + 6 * (stats.accepted + stats.rejected));
    REQUIRE(ts.size() == samples.size());
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(ts[i] == samples[i]);
    // The sample at the breakpoint itself comes from the left segment.
    CHECK(std::abs(ys[2] - Complex(std::exp(-1.0), 0.0)) < 1e-10);
}

TEST_CASE("broken integration: breakpoints on a smooth problem are harmless") {
    auto rhs = [](double, const State<1>& y) { return State<1>{kI * y[0]}; };
    ode::StepperOptions opt;
    ode::StepStats s1, s2;
    auto drop = [](double, const State<1>&) {};
    const auto plain =
        ode::integrateSegment<1>(rhs, 0.0, 1.0, State<1>{Complex(1.0, 0.0)}, opt, {}, drop, s1);
    const std::vector<double> breakpoints{0.5};
    const auto broken = ode::integrateBroken<1>(rhs, 0.0, 1.0, State<1>{Complex(1.0, 0.0)},
                                                breakpoints, opt, {}, drop, s2);
    // The restart reshuffles step sizes, so agreement is at the error level,
    // not bitwise.
    CHECK(std::abs(plain[0] - broken[0]) < 1e-9);
    CHECK(s2.restarts == 1);
}
