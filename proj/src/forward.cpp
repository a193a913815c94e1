#include "tat/forward.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "tat/threading.hpp"

namespace tat {

namespace {

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by Newton
// iteration on the Legendre recurrence.
struct GaussRule {
    std::vector<double> node, weight;
};

GaussRule make_gauss(int n) {
    GaussRule r;
    r.node.resize(n);
    r.weight.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.node[i] = -x;
        r.node[n - 1 - i] = x;
        r.weight[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weight[n - 1 - i] = r.weight[i];
    }
    return r;
}

const GaussRule& gauss20() {
    static const GaussRule r = make_gauss(20);
    return r;
}

struct ComponentBand {
    double dist;    // |x - c|
    double r_lo;    // inner kink radius
    double r_hi;    // outer kink radius
    double rho;     // disk radius or bump cutoff
    double amp;
    double sigma;   // 0 for disks
};

double band_mean(const ComponentBand& c, double r) {
    if (r <= c.r_lo || r >= c.r_hi) {
        // inside the band gap the circle may be fully covered (disk only)
        if (c.sigma == 0.0 && c.dist + r <= c.rho) return c.amp;
        return 0.0;
    }
    const double d = c.dist;
    if (c.sigma == 0.0) {
        double cv = (d * d + r * r - c.rho * c.rho) / (2.0 * d * r);
        cv = std::min(1.0, std::max(-1.0, cv));
        return c.amp * std::acos(cv) / kPi;
    }
    // truncated Gaussian bump: integrate over the covered arc
    double phi_max = kPi;
    if (d + r > c.rho) {
        double cv = (d * d + r * r - c.rho * c.rho) / (2.0 * d * r);
        cv = std::min(1.0, std::max(-1.0, cv));
        phi_max = std::acos(cv);
    }
    const double s2 = c.sigma * c.sigma;
    // fixed high-order rule; integrand is smooth on [0, phi_max]
    const GaussRule& g = gauss20();
    double acc = 0.0;
    for (size_t i = 0; i < g.node.size(); ++i) {
        const double phi = 0.5 * phi_max * (g.node[i] + 1.0);
        const double q2 = d * d + r * r - 2.0 * d * r * std::cos(phi);
        acc += g.weight[i] * std::exp(-q2 / (2.0 * s2));
    }
    return c.amp * 0.5 * phi_max * acc / kPi;
}

// I(t) = int_0^{pi/2} t sin(psi) M(x, t sin(psi)) dpsi, segmented at the
// radii where M has kinks; each segment is mapped through psi = mid -
// half*cos(pi v) so endpoint square-root behavior becomes analytic in v.
double radial_integral(const std::vector<ComponentBand>& bands, double t, int quad_refine) {
    if (t <= 0.0) return 0.0;
    double cuts[64];
    int n_cuts = 0;
    cuts[n_cuts++] = 0.0;
    for (const auto& c : bands) {
        for (double r : {c.r_lo, c.r_hi}) {
            if (r > 0.0 && r < t) cuts[n_cuts++] = std::asin(r / t);
        }
    }
    cuts[n_cuts++] = 0.5 * kPi;
    std::sort(cuts, cuts + n_cuts);

    const GaussRule& g = gauss20();
    double total = 0.0;
    for (int s = 0; s + 1 < n_cuts; ++s) {
        const double a = cuts[s], b = cuts[s + 1];
        if (b - a < 1e-14) continue;
        for (int sub = 0; sub < quad_refine; ++sub) {
            const double va = static_cast<double>(sub) / quad_refine;
            const double vb = static_cast<double>(sub + 1) / quad_refine;
            double acc = 0.0;
            for (size_t i = 0; i < g.node.size(); ++i) {
                const double v = 0.5 * ((vb - va) * g.node[i] + va + vb);
                const double psi = 0.5 * (a + b) - 0.5 * (b - a) * std::cos(kPi * v);
                const double jac = 0.5 * (b - a) * kPi * std::sin(kPi * v);
                const double r = t * std::sin(psi);
                double m = 0.0;
                for (const auto& c : bands) m += band_mean(c, r);
                acc += g.weight[i] * jac * std::sin(psi) * m;
            }
            total += 0.5 * (vb - va) * acc * t;
        }
    }
    return total;
}

}  // namespace

Sinogram simulate_boundary_data(const Phantom& ph, const TimeGrid& grid_t,
                                const AngularGrid& grid_theta, const ForwardOptions& opt) {
    grid_t.validate();
    grid_theta.validate();
    ph.validate();
    if (opt.time_refine < 4)
        throw std::invalid_argument("simulate_boundary_data: time_refine must be >= 4");
    if (opt.quad_refine < 1)
        throw std::invalid_argument("simulate_boundary_data: quad_refine must be >= 1");
    if (ph.disks.size() + ph.bumps.size() > 30)
        throw std::invalid_argument("simulate_boundary_data: too many phantom components");

    Sinogram out(grid_t, grid_theta);
    out.tail_filled = true;
    if (ph.empty()) return out;

    const int M = grid_theta.m_detectors;
    const int n_ext = grid_t.n_extended;
    const int refine = opt.time_refine;
    const double dtau = grid_t.dt / refine;

    std::atomic<bool> failed{false};
    std::mutex fail_mutex;
    std::string fail_message;

    parallel_for(opt.threads, 0, M, [&](long j) {
        if (failed.load(std::memory_order_relaxed)) return;
        const double theta = grid_theta.theta(static_cast<int>(j));
        const double zx = std::cos(theta), zy = std::sin(theta);

        std::vector<ComponentBand> bands;
        for (const auto& d : ph.disks) {
            ComponentBand c;
            c.dist = std::hypot(zx - d.cx, zy - d.cy);
            c.rho = d.rho;
            c.amp = d.amplitude;
            c.sigma = 0.0;
            c.r_lo = std::abs(c.dist - d.rho);
            c.r_hi = c.dist + d.rho;
            bands.push_back(c);
        }
        for (const auto& gc : ph.bumps) {
            ComponentBand c;
            c.dist = std::hypot(zx - gc.cx, zy - gc.cy);
            c.rho = gc.cutoff();
            c.amp = gc.amplitude;
            c.sigma = gc.sigma;
            c.r_lo = std::abs(c.dist - c.rho);
            c.r_hi = c.dist + c.rho;
            bands.push_back(c);
        }
        double arrival = 1e30;
        for (const auto& c : bands) arrival = std::min(arrival, c.r_lo);

        // I on the refined grid, then centered differences, then decimation.
        const int m_max = refine * (n_ext - 1) + 1;
        std::vector<double> I(m_max + 1, 0.0);
        for (int m = 1; m <= m_max; ++m) {
            const double t = m * dtau;
            if (t <= arrival) continue;
            I[m] = radial_integral(bands, t, opt.quad_refine);
            if (!std::isfinite(I[m])) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                failed.store(true, std::memory_order_relaxed);
                fail_message = "simulate_boundary_data: quadrature failure at t=" +
                               std::to_string(t) + " theta=" + std::to_string(theta);
                return;
            }
        }
        for (int i = 1; i < n_ext; ++i) {
            const int m = refine * i;
            out.at(static_cast<int>(j), i) = (I[m + 1] - I[m - 1]) / (2.0 * dtau);
        }
        out.at(static_cast<int>(j), 0) = 0.0;
    });
    if (failed.load()) throw std::runtime_error(fail_message);
    return out;
}

double reduction_window(const AcquisitionConfig& cfg, double theta_rad) {
    if (cfg.zero_arc_empty()) return 1.0;
    const double deg = theta_rad * 180.0 / kPi;
    const double lo = cfg.zero_arc_lo_deg, hi = cfg.zero_arc_hi_deg;
    if (deg <= lo || deg >= hi) return 1.0;
    if (cfg.mask == AcquisitionConfig::Mask::hard) return 0.0;
    const double w = cfg.smooth_width_deg;
    if (w <= 0.0) throw std::invalid_argument("reduction_window: smooth width must be positive");
    if (deg < lo + w) return 0.5 * (1.0 + std::cos(kPi * (deg - lo) / w));
    if (deg > hi - w) return 0.5 * (1.0 - std::cos(kPi * (deg - (hi - w)) / w));
    return 0.0;
}

Sinogram apply_reduction(const Sinogram& s, const AcquisitionConfig& cfg) {
    Sinogram out = s;
    out.geometry.delta2 = cfg.delta2;
    if (cfg.zero_arc_empty()) return out;
    for (int j = 0; j < s.grid_theta.m_detectors; ++j) {
        const double psi = reduction_window(cfg, s.grid_theta.theta(j));
        if (psi == 1.0) continue;
        for (int i = 0; i < s.grid_t.n_extended; ++i) out.at(j, i) *= psi;
    }
    return out;
}

}  // namespace tat
