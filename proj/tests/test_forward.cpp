#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tat/forward.hpp"

using namespace tat;
using doctest::Approx;

namespace {

Phantom one_disk() {
    Phantom ph;
    ph.disks.push_back({0.0, 0.5, 0.2, 1.0});
    return ph;
}

}  // namespace

TEST_CASE("zero phantom gives a zero sinogram") {
    Phantom ph;
    Sinogram s = simulate_boundary_data(ph, TimeGrid::make(32, 2.0, 0.125, 4), AngularGrid(16));
    for (double v : s.values) CHECK(v == 0.0);
}

TEST_CASE("finite propagation speed: arrival at distance minus radius") {
    TimeGrid gt = TimeGrid::make(128, 2.0, 0.125, 4);
    AngularGrid gth(64);
    Sinogram s = simulate_boundary_data(one_disk(), gt, gth);

    // detector at 90 degrees sits 0.5 from the center, first arrival 0.3
    const int j90 = 16;
    double peak = 0.0;
    for (int i = 0; i < gt.n_extended; ++i) peak = std::max(peak, std::abs(s.at(j90, i)));
    REQUIRE(peak > 0.0);
    int first = -1;
    for (int i = 0; i < gt.n_extended; ++i) {
        if (std::abs(s.at(j90, i)) > 1e-6 * peak) {
            first = i;
            break;
        }
    }
    REQUIRE(first >= 0);
    CHECK(std::abs(first * gt.dt - 0.3) <= gt.dt + 1e-12);

    // causality across every detector: silence before dist - 2 dt
    for (int j = 0; j < gth.m_detectors; ++j) {
        const double zx = std::cos(gth.theta(j)), zy = std::sin(gth.theta(j));
        const double dist = std::hypot(zx - 0.0, zy - 0.5) - 0.2;
        for (int i = 0; i < gt.n_extended; ++i) {
            if (gt.t(i) < dist - 2.0 * gt.dt) CHECK(s.at(j, i) == 0.0);
        }
    }
}

TEST_CASE("quadrature refinement is converged") {
    TimeGrid gt = TimeGrid::make(64, 2.0, 0.125, 4);
    AngularGrid gth(32);
    Phantom ph = default_phantom();
    ForwardOptions o1, o2;
    o2.quad_refine = 2;
    Sinogram a = simulate_boundary_data(ph, gt, gth, o1);
    Sinogram b = simulate_boundary_data(ph, gt, gth, o2);
    CHECK(oracle::rel_l2(a.values, b.values) < 1e-6);
}

TEST_CASE("agrees with a coarse finite-difference wave solver on a smooth source") {
    Phantom ph;
    ph.bumps.push_back({0.1, 0.45, 0.08, 1.0});
    TimeGrid gt = TimeGrid::make(64, 2.0, 0.125, 4);
    AngularGrid gth(16);
    Sinogram quad = simulate_boundary_data(ph, gt, gth);
    Sinogram fd = oracle::fd_wave_sinogram(ph, gt, gth, 421, 2.1);
    const double err = oracle::rel_l2(quad.values, fd.values);
    INFO("relative L2 difference vs FD oracle: ", err);
    CHECK(err < 0.03);
}

TEST_CASE("hard and smooth reduction masks") {
    TimeGrid gt = TimeGrid::make(16, 2.0, 0.25, 2);
    AngularGrid gth(256);
    Sinogram s(gt, gth);
    for (auto& v : s.values) v = 1.0;

    AcquisitionConfig empty_arc;
    empty_arc.zero_arc_lo_deg = empty_arc.zero_arc_hi_deg = 200.0;
    Sinogram same = apply_reduction(s, empty_arc);
    CHECK(same.values == s.values);

    AcquisitionConfig hard;  // defaults: [190, 350] hard
    Sinogram red = apply_reduction(s, hard);
    const int j270 = 192;  // 270 degrees
    CHECK(red.at(j270, 3) == 0.0);
    const int j0 = 0;
    CHECK(red.at(j0, 3) == 1.0);

    AcquisitionConfig smooth = hard;
    smooth.mask = AcquisitionConfig::Mask::smooth;
    smooth.smooth_width_deg = 10.0;
    // center of the downward transition band: 195 degrees
    CHECK(reduction_window(smooth, 195.0 * kPi / 180.0) == Approx(0.5).epsilon(1e-12));
    CHECK(reduction_window(smooth, 345.0 * kPi / 180.0) == Approx(0.5).epsilon(1e-12));
    CHECK(reduction_window(smooth, 100.0 * kPi / 180.0) == 1.0);
    CHECK(reduction_window(smooth, 270.0 * kPi / 180.0) == 0.0);
}
