#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tat {

inline constexpr double kPi = 3.14159265358979323846;

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Uniform time axis t_i = t0 + i*dt.  n_samples covers the measurement
// window [0, T); n_extended adds the cut-off tail; n_padded is the FFT
// length (power of two).
struct TimeGrid {
    int n_samples = 0;
    double dt = 0.0;
    double t0 = 0.0;
    int n_extended = 0;
    int n_padded = 0;

    static TimeGrid make(int n_samples, double duration, double tail_fraction,
                         int pad_factor) {
        if (n_samples <= 0 || duration <= 0.0)
            throw std::invalid_argument("TimeGrid: n_samples and duration must be positive");
        if (tail_fraction <= 0.0)
            throw std::invalid_argument("TimeGrid: tail_fraction must be positive");
        if (pad_factor < 1)
            throw std::invalid_argument("TimeGrid: pad_factor must be >= 1");
        TimeGrid g;
        g.n_samples = n_samples;
        g.dt = duration / n_samples;
        g.t0 = 0.0;
        double b = tail_fraction * duration;
        g.n_extended = n_samples + static_cast<int>(std::ceil(b / g.dt - 1e-12));
        g.n_padded = next_pow2(pad_factor * g.n_extended);
        return g;
    }

    double t(int i) const { return t0 + i * dt; }
    double duration() const { return n_samples * dt; }

    void validate() const {
        if (dt <= 0.0) throw std::invalid_argument("TimeGrid: dt must be positive");
        if (!(n_padded >= n_extended && n_extended >= n_samples))
            throw std::invalid_argument("TimeGrid: need n_padded >= n_extended >= n_samples");
        if (!is_pow2(n_padded))
            throw std::invalid_argument("TimeGrid: n_padded must be a power of two");
    }
};

// Equispaced detectors theta_j = 2*pi*j/M over [0, 2*pi).
struct AngularGrid {
    int m_detectors = 0;

    explicit AngularGrid(int m = 0) : m_detectors(m) {}

    double theta(int j) const { return 2.0 * kPi * j / m_detectors; }

    void validate() const {
        if (m_detectors <= 0 || m_detectors % 2 != 0)
            throw std::invalid_argument("AngularGrid: M must be positive and even");
        if (!is_pow2(m_detectors))
            throw std::invalid_argument("AngularGrid: M must be a power of two");
    }
};

// Frequencies lambda_l = l*dlambda, l = -l_nyq..l_nyq, with l_nyq*dlambda
// equal to the Nyquist frequency pi/dt of the time grid.
struct FrequencyGrid {
    double dlambda = 0.0;
    int l_nyq = 0;

    static FrequencyGrid from_time(const TimeGrid& t) {
        FrequencyGrid f;
        f.dlambda = 2.0 * kPi / (t.n_padded * t.dt);
        f.l_nyq = t.n_padded / 2;
        return f;
    }

    double lambda(int l) const { return l * dlambda; }
    int n_cols() const { return 2 * l_nyq + 1; }
};

// Projection grid: alpha_q = 2*pi*q/n_alpha, p_r = p0 + r*dp.
struct RadonGrid {
    int n_alpha = 0;
    int n_p = 0;
    double p0 = 0.0;
    double dp = 0.0;

    // Symmetric p axis: n_p = 2*n_half + 1 samples, p in [-n_half*dp, n_half*dp].
    static RadonGrid symmetric(int n_alpha, int n_half, double dp) {
        RadonGrid g;
        g.n_alpha = n_alpha;
        g.n_p = 2 * n_half + 1;
        g.dp = dp;
        g.p0 = -n_half * dp;
        return g;
    }

    static RadonGrid unit(int n_alpha, int n_p) {
        if (n_p < 3 || n_p % 2 == 0)
            throw std::invalid_argument("RadonGrid: n_p must be odd and >= 3");
        return symmetric(n_alpha, (n_p - 1) / 2, 2.0 / (n_p - 1));
    }

    double alpha(int q) const { return 2.0 * kPi * q / n_alpha; }
    double p(int r) const { return p0 + r * dp; }

    bool p_symmetric() const {
        return n_p % 2 == 1 && std::abs(p0 + 0.5 * dp * (n_p - 1)) < 1e-12 * dp;
    }

    void validate() const {
        if (n_alpha <= 0 || n_alpha % 2 != 0)
            throw std::invalid_argument("RadonGrid: n_alpha must be positive and even");
        if (n_p <= 1 || dp <= 0.0)
            throw std::invalid_argument("RadonGrid: bad p axis");
    }
};

struct Geometry {
    double radius = 1.0;
    double delta2 = 0.17632698070846498;  // tan(10 degrees)
};

// Boundary pressure samples g(t_i, theta_j); detector index is the slow axis.
struct Sinogram {
    TimeGrid grid_t;
    AngularGrid grid_theta;
    Geometry geometry;
    bool tail_filled = false;  // true if samples past n_samples came from the simulator
    std::vector<double> values;  // [M x n_extended] row-major

    Sinogram() = default;
    Sinogram(const TimeGrid& t, const AngularGrid& th)
        : grid_t(t), grid_theta(th),
          values(static_cast<size_t>(th.m_detectors) * t.n_extended, 0.0) {}

    double& at(int j, int i) { return values[static_cast<size_t>(j) * grid_t.n_extended + i]; }
    double at(int j, int i) const { return values[static_cast<size_t>(j) * grid_t.n_extended + i]; }
};

enum class RadonKind : uint32_t {
    F = 10,
    dF_dp = 11,
    F_approx = 12,       // projections of the reduced-data exterior solution
    dF_approx_dp = 13,
    G = 14,
    dG_dp = 15,
    filtered = 16,
};

// Samples over S^1 x [p0, p0 + (n_p-1)*dp]; alpha is the slow axis.
struct RadonData {
    RadonGrid grid;
    RadonKind kind = RadonKind::F;
    std::vector<double> values;  // [n_alpha x n_p] row-major

    RadonData() = default;
    RadonData(const RadonGrid& g, RadonKind k)
        : grid(g), kind(k), values(static_cast<size_t>(g.n_alpha) * g.n_p, 0.0) {}

    double& at(int q, int r) { return values[static_cast<size_t>(q) * grid.n_p + r]; }
    double at(int q, int r) const { return values[static_cast<size_t>(q) * grid.n_p + r]; }
};

// Real-valued image on [-1,1]^2, pixel centers x_i = -1 + (i+0.5)*2/n.
struct Image {
    int nx = 0, ny = 0;
    std::vector<double> values;  // [ny x nx] row-major

    Image() = default;
    Image(int nx_, int ny_) : nx(nx_), ny(ny_), values(static_cast<size_t>(nx_) * ny_, 0.0) {}

    double x(int i) const { return -1.0 + (i + 0.5) * 2.0 / nx; }
    double y(int j) const { return -1.0 + (j + 0.5) * 2.0 / ny; }
    double& at(int j, int i) { return values[static_cast<size_t>(j) * nx + i]; }
    double at(int j, int i) const { return values[static_cast<size_t>(j) * nx + i]; }
};

// Restriction of a RadonData to a p-window; samples are copied bitwise.
RadonData window_p(const RadonData& data, double p_lo, double p_hi);

// Grow the tail [T, T+b], b = tail_fraction*T.  New samples are zero and the
// sinogram is flagged accordingly; a simulator fills them itself.
Sinogram extend_time(const Sinogram& s, double tail_fraction);

}  // namespace tat
