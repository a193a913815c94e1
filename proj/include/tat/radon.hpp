#pragma once

#include "tat/grids.hpp"

namespace tat {

// Per-projection frequency-domain filter; the net multiplier before
// backprojection is |sigma|/(4*pi) (realized as (-i sgn sigma)/(4*pi) on
// data that is already a p-derivative).
struct FilterSpec {
    enum class Variant { from_F, from_dF } variant = Variant::from_F;
    int pad_factor = 2;        // zero-padding of the convolution length
    int upsample = 4;          // spectral interpolation of the filtered rows
    double rolloff_fraction = 0.0;  // raised-cosine over the top band fraction

    static FilterSpec for_kind(RadonKind kind);
};

RadonData filter_projections(const RadonData& data, const FilterSpec& spec);

// [R^# h](x) = sum_q h(alpha_q, omega_q . x) * dalpha with linear
// interpolation in p; samples with omega.x outside the p range contribute 0.
Image backproject(const RadonData& filtered, int image_n, int threads = 1);
double backproject_at(const RadonData& filtered, double x, double y);

// Filtered backprojection; the variant is chosen from the data kind.
Image invert(const RadonData& data, int image_n, const FilterSpec& spec, int threads = 1);
Image invert(const RadonData& data, int image_n, int threads = 1);

}  // namespace tat
