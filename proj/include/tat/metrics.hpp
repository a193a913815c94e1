#pragma once

#include <string>

#include "tat/grids.hpp"

namespace tat {

enum class Norm { L2, Linf };
enum class Region { unit_disk, upper_half, all };

// ||a - ref|| / ||ref|| over the region's pixel centers.
double rel_error(const Image& a, const Image& ref, Norm norm, Region region);

// Fraction of spectral energy above cutoff_fraction * (pi/dx) in radial
// frequency, after a smooth disk window (1 for r <= 0.8, cosine taper to 0
// at r = 0.95) suppresses boundary ringing.
double smoothness_diagnostic(const Image& diff, double cutoff_fraction);

struct ConsistencyReport {
    double mass_deviation = 0.0;    // max over alpha of |int F dp - mean|
    double symmetry_defect = 0.0;   // max |F(omega,p) - F(-omega,-p)|
    std::string to_kv() const;
    std::string to_csv_row() const;  // "mass_deviation,symmetry_defect"
};

ConsistencyReport projection_consistency(const RadonData& data);

}  // namespace tat
