#pragma once

#include <vector>

#include "tat/grids.hpp"

namespace tat {

// Analytic source models.  Disks have closed-form line integrals and
// circular means; Gaussian bumps (compactly truncated at 4*sigma) have
// closed-form line integrals and quadrature-based circular means.
struct DiskComponent {
    double cx = 0.0, cy = 0.0;
    double rho = 0.0;
    double amplitude = 1.0;
};

struct GaussComponent {
    double cx = 0.0, cy = 0.0;
    double sigma = 0.0;
    double amplitude = 1.0;
    double cutoff() const { return 4.0 * sigma; }
};

struct Phantom {
    std::vector<DiskComponent> disks;
    std::vector<GaussComponent> bumps;

    bool empty() const { return disks.empty() && bumps.empty(); }
    // Every component support must lie in {|x| < 1, x2 > 0}.
    void validate() const;
};

double eval(const Phantom& ph, double x, double y);

// Line integral along {x : x.omega = p}; omega must be unit length (1e-12).
double exact_radon(const Phantom& ph, double wx, double wy, double p);
// d/dp of the above (analytic; unbounded at disk chord edges).
double exact_radon_dp(const Phantom& ph, double wx, double wy, double p);

// Mean of the phantom over the circle of radius r centered at (x, y).
double circular_mean(const Phantom& ph, double x, double y, double r);

double total_mass(const Phantom& ph);

Image render(const Phantom& ph, int n);

RadonData sample_radon(const Phantom& ph, const RadonGrid& grid, RadonKind kind);

// The versioned phantom used by the command-line defaults and the
// acceptance runs: one large disk and two smaller satellites.
Phantom default_phantom();

}  // namespace tat
