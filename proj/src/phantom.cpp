#include "tat/phantom.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace tat {

namespace {

double clamp01(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }

double disk_mean(const DiskComponent& d, double px, double py, double r) {
    const double dx = px - d.cx, dy = py - d.cy;
    const double dist = std::hypot(dx, dy);
    if (r == 0.0) return dist < d.rho ? d.amplitude : 0.0;
    if (dist + r <= d.rho) return d.amplitude;
    if (dist >= r + d.rho || r >= dist + d.rho) return 0.0;
    const double c = clamp01((dist * dist + r * r - d.rho * d.rho) / (2.0 * dist * r));
    return d.amplitude * std::acos(c) / kPi;
}

double gauss_mean(const GaussComponent& g, double px, double py, double r) {
    const double dx = px - g.cx, dy = py - g.cy;
    const double dist = std::hypot(dx, dy);
    const double R = g.cutoff();
    const double s2 = g.sigma * g.sigma;
    if (dist >= r + R || r >= dist + R) return 0.0;
    double phi_max = kPi;
    if (dist + r > R && dist > 0.0 && r > 0.0)
        phi_max = std::acos(clamp01((dist * dist + r * r - R * R) / (2.0 * dist * r)));
    const auto integrand = [&](double phi) {
        const double q2 = dist * dist + r * r - 2.0 * dist * r * std::cos(phi);
        return std::exp(-q2 / (2.0 * s2));
    };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, phi_max, 12, 1e-12);
    return g.amplitude * integral / kPi;
}

void check_unit(double wx, double wy) {
    if (std::abs(wx * wx + wy * wy - 1.0) > 2e-12)
        throw std::invalid_argument("exact_radon: omega must be a unit vector");
}

}  // namespace

void Phantom::validate() const {
    for (const auto& d : disks) {
        if (d.rho <= 0.0) throw std::invalid_argument("Phantom: disk radius must be positive");
        if (d.cy - d.rho <= 0.0 || std::hypot(d.cx, d.cy) + d.rho >= 1.0)
            throw std::invalid_argument("Phantom: disk support must lie in the open upper half-disk");
    }
    for (const auto& g : bumps) {
        if (g.sigma <= 0.0) throw std::invalid_argument("Phantom: bump width must be positive");
        if (g.cy - g.cutoff() <= 0.0 || std::hypot(g.cx, g.cy) + g.cutoff() >= 1.0)
            throw std::invalid_argument("Phantom: bump support must lie in the open upper half-disk");
    }
}

double eval(const Phantom& ph, double x, double y) {
    double v = 0.0;
    for (const auto& d : ph.disks) {
        const double dx = x - d.cx, dy = y - d.cy;
        if (dx * dx + dy * dy < d.rho * d.rho) v += d.amplitude;
    }
    for (const auto& g : ph.bumps) {
        const double dx = x - g.cx, dy = y - g.cy;
        const double q2 = dx * dx + dy * dy;
        const double R = g.cutoff();
        if (q2 < R * R) v += g.amplitude * std::exp(-q2 / (2.0 * g.sigma * g.sigma));
    }
    return v;
}

double exact_radon(const Phantom& ph, double wx, double wy, double p) {
    check_unit(wx, wy);
    double v = 0.0;
    for (const auto& d : ph.disks) {
        const double s = p - (d.cx * wx + d.cy * wy);
        const double q = d.rho * d.rho - s * s;
        if (q > 0.0) v += 2.0 * d.amplitude * std::sqrt(q);
    }
    for (const auto& g : ph.bumps) {
        const double s = p - (g.cx * wx + g.cy * wy);
        const double R = g.cutoff();
        const double q = R * R - s * s;
        if (q > 0.0) {
            const double sr2 = std::sqrt(2.0) * g.sigma;
            v += g.amplitude * std::sqrt(2.0 * kPi) * g.sigma *
                 std::exp(-s * s / (2.0 * g.sigma * g.sigma)) * std::erf(std::sqrt(q) / sr2);
        }
    }
    return v;
}

double exact_radon_dp(const Phantom& ph, double wx, double wy, double p) {
    check_unit(wx, wy);
    double v = 0.0;
    for (const auto& d : ph.disks) {
        const double s = p - (d.cx * wx + d.cy * wy);
        const double q = d.rho * d.rho - s * s;
        if (q > 0.0) v += -2.0 * d.amplitude * s / std::sqrt(q);
    }
    for (const auto& g : ph.bumps) {
        const double s = p - (g.cx * wx + g.cy * wy);
        const double R = g.cutoff();
        const double q = R * R - s * s;
        if (q > 0.0) {
            const double s2 = g.sigma * g.sigma;
            const double sr2 = std::sqrt(2.0) * g.sigma;
            const double F = g.amplitude * std::sqrt(2.0 * kPi) * g.sigma *
                             std::exp(-s * s / (2.0 * s2)) * std::erf(std::sqrt(q) / sr2);
            v += -(s / s2) * F -
                 2.0 * g.amplitude * std::exp(-R * R / (2.0 * s2)) * s / std::sqrt(q);
        }
    }
    return v;
}

double circular_mean(const Phantom& ph, double x, double y, double r) {
    if (r < 0.0) throw std::invalid_argument("circular_mean: radius must be nonnegative");
    double v = 0.0;
    for (const auto& d : ph.disks) v += disk_mean(d, x, y, r);
    for (const auto& g : ph.bumps) {
        if (r == 0.0) {
            const double q2 = (x - g.cx) * (x - g.cx) + (y - g.cy) * (y - g.cy);
            const double R = g.cutoff();
            if (q2 < R * R) v += g.amplitude * std::exp(-q2 / (2.0 * g.sigma * g.sigma));
        } else {
            v += gauss_mean(g, x, y, r);
        }
    }
    return v;
}

double total_mass(const Phantom& ph) {
    double m = 0.0;
    for (const auto& d : ph.disks) m += kPi * d.rho * d.rho * d.amplitude;
    for (const auto& g : ph.bumps)
        m += 2.0 * kPi * g.sigma * g.sigma * g.amplitude * (1.0 - std::exp(-8.0));
    return m;
}

Image render(const Phantom& ph, int n) {
    Image img(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) img.at(j, i) = eval(ph, img.x(i), img.y(j));
    return img;
}

RadonData sample_radon(const Phantom& ph, const RadonGrid& grid, RadonKind kind) {
    if (kind != RadonKind::F && kind != RadonKind::dF_dp)
        throw std::invalid_argument("sample_radon: kind must be F or dF/dp");
    RadonData out(grid, kind);
    for (int q = 0; q < grid.n_alpha; ++q) {
        const double wx = std::cos(grid.alpha(q)), wy = std::sin(grid.alpha(q));
        for (int r = 0; r < grid.n_p; ++r) {
            const double p = grid.p(r);
            out.at(q, r) = (kind == RadonKind::F) ? exact_radon(ph, wx, wy, p)
                                                  : exact_radon_dp(ph, wx, wy, p);
        }
    }
    return out;
}

Phantom default_phantom() {
    Phantom ph;
    ph.disks.push_back({0.0, 0.5, 0.49, 1.0});
    ph.disks.push_back({-0.62, 0.22, 0.17, 0.22});
    ph.disks.push_back({0.62, 0.22, 0.14, 0.18});
    ph.validate();
    return ph;
}

}  // namespace tat
