#pragma once

#include "tat/grids.hpp"
#include "tat/phantom.hpp"

namespace tat {

struct AcquisitionConfig {
    double delta2 = 0.17632698070846498;  // tan(10 degrees)
    double zero_arc_lo_deg = 190.0;
    double zero_arc_hi_deg = 350.0;
    enum class Mask { hard, smooth } mask = Mask::hard;
    double smooth_width_deg = 10.0;

    bool zero_arc_empty() const { return zero_arc_hi_deg <= zero_arc_lo_deg; }
};

struct ForwardOptions {
    int time_refine = 4;   // centered-difference refinement of the time axis
    int quad_refine = 1;   // subdivisions of each smooth quadrature segment
    int threads = 1;
};

// Boundary pressure g(t_i, theta_j) on the unit circle from the 2-D
// free-space solution u(t,x) = d/dt int_0^t r M_f(x,r)/sqrt(t^2-r^2) dr,
// evaluated with the substitution r = t sin(psi).  The sinogram covers the
// extended grid [0, T+b) and is flagged tail_filled.
Sinogram simulate_boundary_data(const Phantom& ph, const TimeGrid& grid_t,
                                const AngularGrid& grid_theta,
                                const ForwardOptions& opt = {});

// Hard zeroing of the dead arc, or multiplication by the smooth angular
// window psi(theta).
Sinogram apply_reduction(const Sinogram& s, const AcquisitionConfig& cfg);

// The angular window used by the smooth variant (1 on the kept arc interior,
// 0 deep inside the dead arc).
double reduction_window(const AcquisitionConfig& cfg, double theta_rad);

}  // namespace tat
