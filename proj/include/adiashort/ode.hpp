#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace adiashort::ode {

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& msg, double t)
        : std::runtime_error(msg + " at t=" + std::to_string(t)), t_(t) {}
    double where() const noexcept { return t_; }

private:
    double t_;
};

struct StepStats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
    std::int64_t rhsEvals = 0;
    std::int64_t restarts = 0;  // step-controller restarts at breakpoints
};

struct StepperOptions {
    double relTol = 1e-10;
    double absTol = 1e-12;
    double maxStep = 0.0;  // 0: unlimited
    std::int64_t maxSteps = 20'000'000;
};

template <std::size_t N>
using State = std::array<std::complex<double>, N>;

namespace detail {
// Dormand-Prince 5(4) tableau (FSAL), error weights, and the coefficients of
// the quartic dense-output interpolant.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

inline constexpr double safety = 0.9;
inline constexpr double beta = 0.04;                  // PI stabilization
inline constexpr double expo1 = 0.2 - beta * 0.75;
inline constexpr double maxShrink = 5.0;              // hnew >= h/5
inline constexpr double maxGrow = 0.1;                // hnew <= 10h
}  // namespace detail

// Interpolant over one accepted step [t0, t0+h]; exact at both ends.
template <std::size_t N>
struct DenseStep {
    double t0 = 0.0, h = 0.0;
    std::array<State<N>, 5> r{};

    State<N> eval(double t) const {
        const double s = std::clamp((t - t0) / h, 0.0, 1.0);
        const double s1 = 1.0 - s;
        State<N> y;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = r[0][i] + s * (r[1][i] + s1 * (r[2][i] + s * (r[3][i] + s1 * r[4][i])));
        return y;
    }
};

// Integrates y' = rhs(t, y) from t0 to t1 (forward only) with the adaptive
// 5(4) pair, emitting dense-output samples at the given sorted times (all
// within [t0, t1]).  Returns y(t1).  rhs: (double, const State<N>&) -> State<N>.
template <std::size_t N, class Rhs, class Sink>
State<N> integrateSegment(Rhs&& rhs, double t0, double t1, State<N> y,
                          const StepperOptions& opt, std::span<const double> samples,
                          Sink&& emit, StepStats& stats) {
    if (!(t0 < t1)) throw std::invalid_argument("integrateSegment: need t0 < t1");
    if (!(opt.relTol > 0.0) || !(opt.absTol > 0.0))
        throw std::invalid_argument("integrateSegment: tolerances must be > 0");

    const double uround = std::numeric_limits<double>::epsilon();
    const double span = t1 - t0;
    const double hmax = opt.maxStep > 0.0 ? std::min(opt.maxStep, span) : span;

    std::size_t si = 0;
    while (si < samples.size() && samples[si] <= t0) emit(samples[si++], y);

    auto f = [&](double t, const State<N>& yy) {
        ++stats.rhsEvals;
        return rhs(t, yy);
    };
    auto scaledNorm = [&](const State<N>& y0, const State<N>& y1, const State<N>& v) {
        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt.absTol + opt.relTol * std::max(std::abs(y0[i]), std::abs(y1[i]));
            const double e = std::abs(v[i]) / sc;
            sum += e * e;
        }
        return std::sqrt(sum / N);
    };

    State<N> k1 = f(t0, y), k2, k3, k4, k5, k6, k7, ytmp, ynew, errv;

    // Initial step size (standard two-probe heuristic).
    double h;
    {
        double dny = 0.0, dnf = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt.absTol + opt.relTol * std::abs(y[i]);
            dny += std::norm(y[i]) / (sc * sc);
            dnf += std::norm(k1[i]) / (sc * sc);
        }
        double h0 = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
        h0 = std::min(h0, hmax);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h0 * k1[i];
        k2 = f(t0 + h0, ytmp);
        double der2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt.absTol + opt.relTol * std::abs(y[i]);
            der2 += std::norm(k2[i] - k1[i]) / (sc * sc);
        }
        der2 = std::sqrt(der2) / h0;
        const double der12 = std::max(der2, std::sqrt(dnf));
        const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                           : std::pow(0.01 / der12, 0.2);
        h = std::min({100.0 * h0, h1, hmax});
    }

    double t = t0;
    double facold = 1e-4;
    bool rejectedLast = false;

    for (;;) {
        if (stats.accepted + stats.rejected >= opt.maxSteps)
            throw IntegrationError("integrateSegment: step limit exceeded", t);
        bool lastStep = false;
        if (t + h >= t1) {
            h = t1 - t;
            lastStep = true;
        }
        if (h <= 32.0 * uround * std::max(1.0, std::abs(t)))
            throw IntegrationError("integrateSegment: step size underflow", t);

        using namespace detail;
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a21 * k1[i]);
        k2 = f(t + c2 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(t + c3 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(t + c4 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(t + c5 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        k6 = f(t + h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = f(lastStep ? t1 : t + h, ynew);
        for (std::size_t i = 0; i < N; ++i)
            errv[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                           e7 * k7[i]);

        const double err = scaledNorm(y, ynew, errv);
        if (!std::isfinite(err)) {
            ++stats.rejected;
            rejectedLast = true;
            h *= 0.25;
            continue;
        }

        const double fac11 = std::pow(err, expo1);
        if (err <= 1.0) {
            facold = std::max(err, 1e-4);
            ++stats.accepted;
            const double tNew = lastStep ? t1 : t + h;

            if (si < samples.size() && samples[si] <= tNew) {
                DenseStep<N> dense;
                dense.t0 = t;
                dense.h = h;
                for (std::size_t i = 0; i < N; ++i) {
                    const auto ydiff = ynew[i] - y[i];
                    const auto bspl = h * k1[i] - ydiff;
                    dense.r[0][i] = y[i];
                    dense.r[1][i] = ydiff;
                    dense.r[2][i] = bspl;
                    dense.r[3][i] = ydiff - h * k7[i] - bspl;
                    dense.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                         d6 * k6[i] + d7 * k7[i]);
                }
                while (si < samples.size() && samples[si] <= tNew) {
                    emit(samples[si], samples[si] == tNew ? ynew : dense.eval(samples[si]));
                    ++si;
                }
            }

            y = ynew;
            k1 = k7;
            t = tNew;
            if (lastStep) break;

            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(maxGrow, std::min(maxShrink, fac / safety));
            double hnew = h / fac;
            if (hnew > hmax) hnew = hmax;
            if (rejectedLast) hnew = std::min(hnew, h);
            rejectedLast = false;
            h = hnew;
        } else {
            ++stats.rejected;
            rejectedLast = true;
            h = h / std::min(maxShrink, fac11 / safety);
        }
    }

    while (si < samples.size()) emit(samples[si++], y);  // samples pinned to t1
    return y;
}

// Splits [t0, t1] at interior breakpoints (sorted, strictly inside) and
// integrates segment by segment, restarting the step controller at each one.
template <std::size_t N, class Rhs, class Sink>
State<N> integrateBroken(Rhs&& rhs, double t0, double t1, State<N> y,
                         std::span<const double> breakpoints, const StepperOptions& opt,
                         std::span<const double> samples, Sink&& emit, StepStats& stats) {
    double segStart = t0;
    std::size_t si = 0;
    auto runSegment = [&](double a, double b) {
        const auto end = static_cast<std::size_t>(
            std::upper_bound(samples.begin() + static_cast<std::ptrdiff_t>(si), samples.end(), b) -
            samples.begin());
        y = integrateSegment<N>(rhs, a, b, y, opt, samples.subspan(si, end - si), emit, stats);
        si = end;
    };
    for (double bp : breakpoints) {
        runSegment(segStart, bp);
        ++stats.restarts;
        segStart = bp;
    }
    runSegment(segStart, t1);
    return y;
}

}  // namespace adiashort::ode
