#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "adiashort/frame.hpp"
#include "adiashort/hamiltonian.hpp"
#include "adiashort/mat2.hpp"
#include "adiashort/types.hpp"

using namespace adiashort;

namespace {

double entryScale(const Mat2& m) {
    return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d), 1.0});
}

double matDist(const Mat2& x, const Mat2& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                     std::abs(x.d - y.d)});
}

// Long-double mixing angle, used only to differentiate numerically: the
// production code must agree with a finite-difference derivative of an
// independently computed angle.
long double thetaLong(const DriveModel& m, long double t) {
    if (const auto* lz = std::get_if<LandauZenerDrive>(&m))
        return 0.5L * atan2l((long double)lz->omega, t);
    const auto* ae = std::get_if<AllenEberlyDrive>(&m);
    REQUIRE(ae != nullptr);
    return 0.5L * atan2l((long double)ae->alpha / coshl(t), (long double)ae->delta * tanhl(t));
}

double thetaDotFd(const DriveModel& m, double t) {
    const long double h = 1e-6L;
    auto diff = [&](long double hh) {
        return (thetaLong(m, (long double)t + hh) - thetaLong(m, (long double)t - hh)) /
               (2.0L * hh);
    };
    // One Richardson level kills the O(h^2) term.
    return (double)((4.0L * diff(h / 2.0L) - diff(h)) / 3.0L);
}

}  // namespace

TEST_CASE("mixing angle: landmarks and frozen endpoint values") {
    const DriveModel lz1 = LandauZenerDrive{1.0};

    // Delta = 0 puts the angle exactly at the symmetric point.
    CHECK(mixingAngle(lz1, 0.0) == 0.5 * std::atan2(1.0, 0.0));
    CHECK(mixingAngle(lz1, 0.0) == Catch::Approx(0.25 * M_PI).epsilon(1e-15));

    CHECK(mixingAngle(lz1, -15.0) == Catch::Approx(1.5375122449069847).epsilon(1e-15));
    CHECK(mixingAngle(DriveModel(LandauZenerDrive{0.2}), -15.0) ==
          Catch::Approx(1.5641300551478238).epsilon(1e-15));
    CHECK(mixingAngle(DriveModel(LandauZenerDrive{2.0}), -15.0) ==
          Catch::Approx(1.5045205606465596).epsilon(1e-15));

    const DriveModel ae11 = AllenEberlyDrive{1.0, 1.0};
    CHECK(mixingAngle(ae11, -15.0) == Catch::Approx(1.5707960208925761).epsilon(1e-15));
    // Near-complete sweep: theta(tF) collapses to half the residual sech/tanh ratio.
    CHECK(mixingAngle(ae11, 15.0) == Catch::Approx(3.0590232050181625e-7).epsilon(1e-12));
}

TEST_CASE("mixing angle: strictly decreasing for a monotone detuning sweep") {
    const DriveModel lz = LandauZenerDrive{0.7};
    double prev = mixingAngle(lz, -15.0);
    for (int k = 1; k <= 600; ++k) {
        const double t = -15.0 + 30.0 * k / 600.0;
        const double th = mixingAngle(lz, t);
        CHECK(th < prev);
        CHECK(th > 0.0);
        CHECK(th < 0.5 * M_PI);
        prev = th;
    }
}

TEST_CASE("mixing angle rate: closed forms at the crossing") {
    // LZ: thetaDot = -omega / (2 (omega^2 + t^2)) = -1/(2 omega) at t=0.
    CHECK(mixingAngleRate(DriveModel(LandauZenerDrive{1.0}), 0.0) == -0.5);
    CHECK(mixingAngleRate(DriveModel(LandauZenerDrive{2.0}), 0.0) == -0.25);
    CHECK(mixingAngleRate(DriveModel(LandauZenerDrive{0.2}), 0.0) ==
          Catch::Approx(-2.5).epsilon(1e-15));
    // AE: thetaDot(0) = -delta / (2 alpha).
    CHECK(mixingAngleRate(DriveModel(AllenEberlyDrive{2.0, 1.0}), 0.0) == -0.25);
}

TEST_CASE("mixing angle rate agrees with a finite-difference derivative") {
    for (const DriveModel& m :
         {DriveModel(LandauZenerDrive{0.2}), DriveModel(LandauZenerDrive{1.0}),
          DriveModel(LandauZenerDrive{2.0}), DriveModel(AllenEberlyDrive{1.0, 1.0}),
          DriveModel(AllenEberlyDrive{0.2, 1.0}), DriveModel(AllenEberlyDrive{2.0, 1.0})}) {
        for (int k = 0; k <= 100; ++k) {
            const double t = -12.0 + 24.0 * k / 100.0;
            const double fd = thetaDotFd(m, t);
            CHECK(std::abs(mixingAngleRate(m, t) - fd) < 1e-10);
        }
    }
}

TEST_CASE("adiabatic eigenvalues: gap at the crossing and spectral consistency") {
    const DriveModel lz1 = LandauZenerDrive{1.0};
    const auto [lm0, lp0] = adiabaticEigenvalues(lz1, 0.0);
    CHECK(lm0 == -0.5);
    CHECK(lp0 == 0.5);

    // Same spectrum as the bare Hamiltonian with the gain/loss term off.
    const GammaPolicy off = GammaPolicy::off();
    for (const DriveModel& m : {DriveModel(LandauZenerDrive{0.7}),
                                DriveModel(AllenEberlyDrive{1.3, 0.8})}) {
        for (int k = 0; k <= 1000; ++k) {
            const double t = -15.0 + 30.0 * k / 1000.0;
            const auto [lm, lp] = adiabaticEigenvalues(m, t);
            const auto [e1, e2] = eigenvalues2(hamiltonian(m, off, t));
            const double scale = std::max(1.0, std::abs(lp));
            CHECK(std::abs(e1 - Complex(lm, 0.0)) < 1e-12 * scale);
            CHECK(std::abs(e2 - Complex(lp, 0.0)) < 1e-12 * scale);
        }
    }
}

TEST_CASE("basis rotation: round trip and norm preservation") {
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> comp(-2.0, 2.0);
    std::uniform_real_distribution<double> ang(1e-6, 0.5 * M_PI - 1e-6);
    for (int rep = 0; rep < 500; ++rep) {
        const StateVector c{Complex(comp(rng), comp(rng)), Complex(comp(rng), comp(rng))};
        const double th = ang(rng);
        const auto a = toAdiabaticBasis(c, th);
        const auto back = fromAdiabaticBasis(a, th);
        CHECK(std::abs(back.c1 - c.c1) < 1e-15 * (1.0 + std::abs(c.c1)));
        CHECK(std::abs(back.c2 - c.c2) < 1e-15 * (1.0 + std::abs(c.c2)));
        const double na = std::sqrt(std::norm(a.aMinus) + std::norm(a.aPlus));
        CHECK(std::abs(na - c.normValue()) < 1e-14 * (1.0 + c.normValue()));
    }
}

TEST_CASE("basis rotation maps the instantaneous eigenvectors to unit axes") {
    const DriveModel lz = LandauZenerDrive{1.4};
    const double t = -3.7;
    const double th = mixingAngle(lz, t);
    // (sin th, cos th) is the upper level, (cos th, -sin th) the lower one.
    const auto up = toAdiabaticBasis({Complex(std::sin(th), 0.0), Complex(std::cos(th), 0.0)}, th);
    CHECK(std::abs(up.aMinus) < 1e-16);
    CHECK(std::abs(up.aPlus - Complex(1.0, 0.0)) < 1e-15);
    const auto dn =
        toAdiabaticBasis({Complex(std::cos(th), 0.0), Complex(-std::sin(th), 0.0)}, th);
    CHECK(std::abs(dn.aMinus - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(dn.aPlus) < 1e-16);

    // Eigenvector residual: H phi = lambda phi for both branches.
    const auto H = hamiltonian(lz, GammaPolicy::off(), t);
    const auto [lm, lp] = adiabaticEigenvalues(lz, t);
    const StateVector phiP{Complex(std::sin(th), 0.0), Complex(std::cos(th), 0.0)};
    const auto HphiP = H.apply(phiP);
    CHECK(std::abs(HphiP.c1 - lp * phiP.c1) < 1e-14 * std::max(1.0, std::abs(lp)));
    CHECK(std::abs(HphiP.c2 - lp * phiP.c2) < 1e-14 * std::max(1.0, std::abs(lp)));
    const StateVector phiM{Complex(std::cos(th), 0.0), Complex(-std::sin(th), 0.0)};
    const auto HphiM = H.apply(phiM);
    CHECK(std::abs(HphiM.c1 - lm * phiM.c1) < 1e-14 * std::max(1.0, std::abs(lm)));
    CHECK(std::abs(HphiM.c2 - lm * phiM.c2) < 1e-14 * std::max(1.0, std::abs(lm)));
}

TEST_CASE("adiabatic-frame Hamiltonian: hermitian case") {
    const DriveModel lz1 = LandauZenerDrive{1.0};
    const GammaPolicy off = GammaPolicy::off();

    const Mat2 h0 = adiabaticHamiltonian(lz1, off, 0.0);
    CHECK(h0.a == Complex(-0.5, 0.0));
    CHECK(h0.d == Complex(0.5, 0.0));
    CHECK(h0.b == Complex(0.0, 0.5));   // -i*thetaDot, thetaDot(0) = -1/2
    CHECK(h0.c == Complex(0.0, -0.5));

    for (int k = 0; k <= 200; ++k) {
        const double t = -15.0 + 30.0 * k / 200.0;
        const Mat2 ha = adiabaticHamiltonian(lz1, off, t);
        CHECK(std::abs(ha.b - std::conj(ha.c)) < 1e-15 * entryScale(ha));
        CHECK(std::abs(ha.a.imag()) < 1e-15 * entryScale(ha));
        CHECK(std::abs(ha.d.imag()) < 1e-15 * entryScale(ha));
    }
}

TEST_CASE("adiabatic-frame Hamiltonian: decoupling profile zeroes one corner") {
    for (const DriveModel& m : {DriveModel(LandauZenerDrive{0.2}), DriveModel(LandauZenerDrive{1.0}),
                                DriveModel(AllenEberlyDrive{1.0, 1.0}),
                                DriveModel(AllenEberlyDrive{2.0, 1.0})}) {
        const GammaPolicy plus = GammaPolicy::shortcut(+1);
        const GammaPolicy minus = GammaPolicy::shortcut(-1);
        for (int k = 0; k <= 400; ++k) {
            const double t = -15.0 + 30.0 * k / 400.0;
            const Mat2 hp = adiabaticHamiltonian(m, plus, t);
            const double scale = entryScale(hp);
            CHECK(std::abs(hp.b) <= 1e-14 * scale);
            // Surviving corner doubles: (2,1) = 2i*thetaDot.
            const Complex want(0.0, 2.0 * mixingAngleRate(m, t));
            CHECK(std::abs(hp.c - want) <= 1e-12 * scale);

            const Mat2 hm = adiabaticHamiltonian(m, minus, t);
            CHECK(std::abs(hm.c) <= 1e-14 * entryScale(hm));
            CHECK(std::abs(hm.b - Complex(0.0, -2.0 * mixingAngleRate(m, t))) <=
                  1e-12 * entryScale(hm));
        }
    }
}

TEST_CASE("adiabatic-frame Hamiltonian equals the transformed bare one") {
    // Independent route: H_a = R^T H R - i R^T dR/dt with R built from the
    // angle and dtheta/dt from long-double finite differences.
    for (const DriveModel& m : {DriveModel(LandauZenerDrive{1.0}),
                                DriveModel(AllenEberlyDrive{1.0, 1.0})}) {
        for (const GammaPolicy& pol : {GammaPolicy::off(), GammaPolicy::shortcut(+1)}) {
            for (int k = 0; k <= 300; ++k) {
                const double t = -12.0 + 24.0 * k / 300.0;
                const double th = mixingAngle(m, t);
                const double thDot = thetaDotFd(m, t);
                const double cs = std::cos(th), sn = std::sin(th);
                const Mat2 R{cs, sn, -sn, cs};
                const Mat2 Rt{cs, -sn, sn, cs};
                const Mat2 H = hamiltonian(m, pol, t);
                // R^T dR/dt = thetaDot * [[0,1],[-1,0]].
                const Mat2 gauge{0.0, Complex(0.0, -thDot), Complex(0.0, thDot), 0.0};
                const Mat2 expected = Rt * H * R + gauge;
                const Mat2 got = adiabaticHamiltonian(m, pol, t);
                CHECK(matDist(got, expected) < 1e-10 * entryScale(got));
            }
        }
    }
}

TEST_CASE("mixing angle rejects vanishing coupling") {
    const DriveModel flat = TabulatedDrive({-1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, {0.0, 0.0, 0.0});
    CHECK_THROWS_AS(mixingAngle(flat, 0.0), std::domain_error);
    CHECK_THROWS_AS(mixingAngleRate(flat, 0.0), std::domain_error);
    CHECK_THROWS_AS(adiabaticHamiltonian(flat, GammaPolicy::off(), 0.0), std::domain_error);
}

TEST_CASE("matrix exponential: closed-form pieces") {
    const Mat2 z{};
    const Mat2 ez = expm(z);
    CHECK(matDist(ez, Mat2::identity()) == 0.0);

    const Mat2 diag{Complex(0.3, -0.2), 0.0, 0.0, Complex(-1.1, 0.4)};
    const Mat2 ed = expm(diag);
    CHECK(std::abs(ed.a - std::exp(diag.a)) < 1e-15 * std::abs(std::exp(diag.a)));
    CHECK(std::abs(ed.d - std::exp(diag.d)) < 1e-15);
    CHECK(std::abs(ed.b) == 0.0);
    CHECK(std::abs(ed.c) == 0.0);

    // Nilpotent: q^2 = 0, series path, exp([[0,1],[0,0]]) = [[1,1],[0,1]].
    const Mat2 nil{0.0, 1.0, 0.0, 0.0};
    const Mat2 en = expm(nil);
    CHECK(std::abs(en.a - 1.0) < 1e-15);
    CHECK(std::abs(en.b - 1.0) < 1e-15);
    CHECK(std::abs(en.c) < 1e-15);
    CHECK(std::abs(en.d - 1.0) < 1e-15);

    // Coupling rotation: exp(-i (t/2) sigma_x).
    const double t = 1.9;
    const Mat2 rabi{0.0, Complex(0.0, -0.5 * t), Complex(0.0, -0.5 * t), 0.0};
    const Mat2 er = expm(rabi);
    CHECK(std::abs(er.a - std::cos(0.5 * t)) < 1e-15);
    CHECK(std::abs(er.b - Complex(0.0, -std::sin(0.5 * t))) < 1e-15);
    CHECK(std::abs(er.c - Complex(0.0, -std::sin(0.5 * t))) < 1e-15);
    CHECK(std::abs(er.d - std::cos(0.5 * t)) < 1e-15);
}

TEST_CASE("matrix exponential matches a plain Taylor sum on random matrices") {
    std::mt19937_64 rng(0x0ddba11ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const Mat2 m{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                     Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
        Mat2 sum = Mat2::identity();
        Mat2 term = Mat2::identity();
        for (int n = 1; n <= 60; ++n) {
            term = term * m;
            term = Complex(1.0 / n, 0.0) * term;
            sum = sum + term;
        }
        CHECK(matDist(expm(m), sum) < 1e-13 * entryScale(sum));
    }
}

TEST_CASE("eigenvalue pair matches trace and determinant") {
    std::mt19937_64 rng(0xabcdefULL);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int rep = 0; rep < 200; ++rep) {
        const Mat2 m{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                     Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
        const auto [e1, e2] = eigenvalues2(m);
        CHECK(std::abs(e1 + e2 - m.trace()) < 1e-13 * std::max(1.0, std::abs(m.trace())));
        CHECK(std::abs(e1 * e2 - m.det()) < 1e-12 * std::max(1.0, std::abs(m.det())));
    }
}

TEST_CASE("uniform grid: exact endpoints and exact zero on symmetric windows") {
    const Window w{-15.0, 15.0};
    const auto g = uniformGrid(w, 2001);
    REQUIRE(g.size() == 2001);
    CHECK(g.front() == -15.0);
    CHECK(g.back() == 15.0);
    CHECK(g[1000] == 0.0);
    CHECK(g[1500] == 7.5);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

    const auto tiny = uniformGrid(Window{2.0, 3.0}, 2);
    CHECK(tiny.front() == 2.0);
    CHECK(tiny.back() == 3.0);
}

TEST_CASE("window predicates") {
    CHECK(Window{-15.0, 15.0}.symmetric());
    CHECK_FALSE(Window{-15.0, 10.0}.symmetric());
    CHECK(Window{-1.0, 1.0}.contains(1.0));
    CHECK(Window{-1.0, 1.0}.contains(-1.0));
    CHECK_FALSE(Window{-1.0, 1.0}.contains(1.0000001));
    CHECK(Window{-2.0, 5.0}.span() == 7.0);
}
