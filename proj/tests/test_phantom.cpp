#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tat/phantom.hpp"

using namespace tat;
using doctest::Approx;

TEST_CASE("eval basics") {
    Phantom empty;
    CHECK(eval(empty, 0.3, 0.4) == 0.0);

    Phantom ph;
    ph.disks.push_back({0.0, 0.5, 0.2, 1.0});
    CHECK(eval(ph, 0.0, 0.5) == 1.0);
    CHECK(eval(ph, 0.0, 0.8) == 0.0);
}

TEST_CASE("disk line integrals") {
    Phantom ph;
    ph.disks.push_back({0.0, 0.5, 0.2, 1.0});
    CHECK(exact_radon(ph, 0.0, 1.0, 0.5) == Approx(0.4).epsilon(1e-14));
    CHECK(exact_radon(ph, 0.0, 1.0, 0.8) == 0.0);
    CHECK(exact_radon(ph, 1.0, 0.0, 0.1) == Approx(2.0 * std::sqrt(0.03)).epsilon(1e-14));
    CHECK_THROWS_AS(exact_radon(ph, 0.5, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("gaussian line integral matches direct quadrature") {
    Phantom ph;
    ph.bumps.push_back({0.1, 0.45, 0.08, 0.7});
    const double wx = std::cos(0.3), wy = std::sin(0.3);
    for (double p : {0.2, 0.32, 0.45}) {
        // integrate f along the line x.omega = p directly
        const double ref = oracle::integrate(
            [&](double s) {
                const double x = p * wx - s * wy, y = p * wy + s * wx;
                return eval(ph, x, y);
            },
            -1.0, 1.0, 1e-12);
        CHECK(exact_radon(ph, wx, wy, p) == Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("gaussian radon derivative matches difference quotient") {
    Phantom ph;
    ph.bumps.push_back({-0.2, 0.4, 0.07, 1.3});
    const double wx = std::cos(1.1), wy = std::sin(1.1);
    for (double p : {0.05, 0.2, 0.3}) {
        const double h = 1e-6;
        const double fd =
            (exact_radon(ph, wx, wy, p + h) - exact_radon(ph, wx, wy, p - h)) / (2 * h);
        CHECK(exact_radon_dp(ph, wx, wy, p) == Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("circular means") {
    Phantom ph;
    ph.disks.push_back({0.0, 0.5, 0.2, 1.0});
    CHECK(circular_mean(ph, 0.0, 0.5, 0.1) == 1.0);
    CHECK(circular_mean(ph, 0.0, 0.5, 0.4) == 0.0);

    // Partial overlap against an independent jump-locating oracle: bisect the
    // sign changes of |x + r e^{i phi} - c|^2 - rho^2 and sum the covered arcs.
    const double x = 0.0, y = 0.1, r = 0.4;
    const auto inside = [&](double phi) {
        const double px = x + r * std::cos(phi) - ph.disks[0].cx;
        const double py = y + r * std::sin(phi) - ph.disks[0].cy;
        return px * px + py * py - ph.disks[0].rho * ph.disks[0].rho;
    };
    const int n_scan = 1 << 14;
    double covered = 0.0;
    double prev_phi = 0.0, prev_g = inside(0.0);
    double last_edge = 0.0;
    bool in = prev_g < 0.0;
    for (int i = 1; i <= n_scan; ++i) {
        const double phi = 2.0 * kPi * i / n_scan;
        const double g = inside(phi);
        if ((g < 0.0) != (prev_g < 0.0)) {
            double lo = prev_phi, hi = phi;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((inside(mid) < 0.0) == (prev_g < 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            const double edge = 0.5 * (lo + hi);
            if (in) covered += edge - last_edge;
            last_edge = edge;
            in = !in;
        }
        prev_phi = phi;
        prev_g = g;
    }
    if (in) covered += 2.0 * kPi - last_edge;
    const double ref = covered / (2.0 * kPi);
    const double got = circular_mean(ph, x, y, r);
    CHECK(got > 0.0);
    CHECK(got < 1.0);
    CHECK(got == Approx(ref).epsilon(1e-10));
}

TEST_CASE("gaussian circular mean matches quadrature of eval") {
    Phantom ph;
    ph.bumps.push_back({0.1, 0.45, 0.08, 0.7});
    for (double r : {0.05, 0.2, 0.5}) {
        const double x = 0.05, y = 0.3;
        const double ref = oracle::integrate(
                               [&](double phi) {
                                   return eval(ph, x + r * std::cos(phi), y + r * std::sin(phi));
                               },
                               0.0, 2.0 * kPi, 1e-12) /
                           (2.0 * kPi);
        CHECK(circular_mean(ph, x, y, r) == Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("projection symmetry under (omega, p) -> (-omega, -p)") {
    Phantom ph = default_phantom();
    ph.bumps.push_back({0.1, 0.45, 0.05, 0.4});
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(0.0, 2.0 * kPi), up(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double a = ua(rng), p = up(rng);
        const double f1 = exact_radon(ph, std::cos(a), std::sin(a), p);
        const double f2 = exact_radon(ph, -std::cos(a), -std::sin(a), -p);
        CHECK(f1 == Approx(f2).epsilon(1e-12));
    }
}

TEST_CASE("projection mass is direction independent and equals the phantom mass") {
    Phantom ph = default_phantom();
    ph.bumps.push_back({0.1, 0.45, 0.05, 0.4});
    const double mass = total_mass(ph);
    for (double a : {0.0, 0.7, 2.1, 4.4}) {
        const double m = oracle::integrate(
            [&](double p) { return exact_radon(ph, std::cos(a), std::sin(a), p); }, -1.0, 1.0,
            1e-12);
        CHECK(m == Approx(mass).epsilon(1e-8));
    }
}

TEST_CASE("projections vanish outside |p| < 1") {
    Phantom ph = default_phantom();
    for (double a : {0.3, 1.9, 3.3}) {
        CHECK(exact_radon(ph, std::cos(a), std::sin(a), 1.0) == 0.0);
        CHECK(exact_radon(ph, std::cos(a), std::sin(a), -1.0) == 0.0);
        CHECK(exact_radon(ph, std::cos(a), std::sin(a), 1.3) == 0.0);
    }
}

TEST_CASE("support validation") {
    Phantom bad;
    bad.disks.push_back({0.0, 0.2, 0.4, 1.0});  // dips below x2 = 0
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    Phantom bad2;
    bad2.disks.push_back({0.8, 0.5, 0.4, 1.0});  // leaves the unit disk
    CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
    CHECK_NOTHROW(default_phantom().validate());
}
