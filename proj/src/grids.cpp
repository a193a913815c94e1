#include "tat/grids.hpp"

#include <cmath>

namespace tat {

RadonData window_p(const RadonData& data, double p_lo, double p_hi) {
    const RadonGrid& g = data.grid;
    if (p_lo > p_hi) throw std::out_of_range("window_p: empty window");
    const double eps = 1e-9 * g.dp;
    double p_min = g.p0, p_max = g.p0 + (g.n_p - 1) * g.dp;
    if (p_lo < p_min - eps || p_hi > p_max + eps)
        throw std::out_of_range("window_p: window outside stored p range");

    int r_lo = static_cast<int>(std::ceil((p_lo - g.p0) / g.dp - 1e-9));
    int r_hi = static_cast<int>(std::floor((p_hi - g.p0) / g.dp + 1e-9));
    if (r_lo < 0) r_lo = 0;
    if (r_hi > g.n_p - 1) r_hi = g.n_p - 1;

    RadonGrid out_grid = g;
    out_grid.n_p = r_hi - r_lo + 1;
    out_grid.p0 = g.p0 + r_lo * g.dp;

    RadonData out(out_grid, data.kind);
    for (int q = 0; q < g.n_alpha; ++q)
        for (int r = 0; r < out_grid.n_p; ++r)
            out.at(q, r) = data.at(q, r_lo + r);
    return out;
}

Sinogram extend_time(const Sinogram& s, double tail_fraction) {
    if (tail_fraction <= 0.0)
        throw std::invalid_argument("extend_time: tail_fraction must be positive");
    double T = s.grid_t.duration();
    double b = tail_fraction * T;
    TimeGrid g = s.grid_t;
    int n_new = s.grid_t.n_samples +
                static_cast<int>(std::ceil(b / g.dt - 1e-12));
    if (n_new < g.n_extended) n_new = g.n_extended;
    g.n_extended = n_new;
    if (g.n_padded < g.n_extended) g.n_padded = next_pow2(g.n_extended);

    Sinogram out(g, s.grid_theta);
    out.geometry = s.geometry;
    out.tail_filled = false;
    for (int j = 0; j < s.grid_theta.m_detectors; ++j)
        for (int i = 0; i < s.grid_t.n_extended; ++i)
            out.at(j, i) = s.at(j, i);
    return out;
}

}  // namespace tat
