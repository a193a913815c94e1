#include "tat/radon.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "tat/fft.hpp"
#include "tat/threading.hpp"

namespace tat {

namespace {

bool is_derivative_kind(RadonKind k) {
    return k == RadonKind::dF_dp || k == RadonKind::dF_approx_dp || k == RadonKind::dG_dp;
}

bool is_value_kind(RadonKind k) {
    return k == RadonKind::F || k == RadonKind::F_approx || k == RadonKind::G;
}

}  // namespace

FilterSpec FilterSpec::for_kind(RadonKind kind) {
    FilterSpec s;
    if (is_derivative_kind(kind))
        s.variant = Variant::from_dF;
    else if (is_value_kind(kind))
        s.variant = Variant::from_F;
    else
        throw std::invalid_argument("FilterSpec: unsupported data kind");
    return s;
}

RadonData filter_projections(const RadonData& data, const FilterSpec& spec) {
    const RadonGrid& g = data.grid;
    g.validate();
    if (spec.pad_factor < 2) throw std::invalid_argument("filter_projections: pad_factor < 2");
    if (spec.upsample < 1) throw std::invalid_argument("filter_projections: upsample < 1");
    if (spec.variant == FilterSpec::Variant::from_F && !is_value_kind(data.kind))
        throw std::invalid_argument("filter_projections: from_F expects projection values");
    if (spec.variant == FilterSpec::Variant::from_dF && !is_derivative_kind(data.kind))
        throw std::invalid_argument("filter_projections: from_dF expects projection derivatives");

    const int P = g.n_p;
    const int Nf = next_pow2(spec.pad_factor * P);
    const int U = spec.upsample;
    const int Nu = Nf * U;

    // multiplier on signed frequency bins of the length-Nf transform
    std::vector<std::complex<double>> mult(Nf);
    const double dsigma = 2.0 * kPi / (Nf * g.dp);
    const double sigma_max = kPi / g.dp;
    for (int m = 0; m < Nf; ++m) {
        const int ms = (m <= Nf / 2) ? m : m - Nf;
        const double sigma = ms * dsigma;
        std::complex<double> v;
        if (spec.variant == FilterSpec::Variant::from_F) {
            v = std::abs(sigma) / (4.0 * kPi);
        } else {
            double sgn = (sigma > 0.0) ? 1.0 : (sigma < 0.0 ? -1.0 : 0.0);
            if (m == Nf / 2) sgn = 0.0;  // unsigned Nyquist bin
            v = std::complex<double>(0.0, -sgn) / (4.0 * kPi);
        }
        if (spec.rolloff_fraction > 0.0) {
            const double start = (1.0 - spec.rolloff_fraction) * sigma_max;
            const double aa = std::abs(sigma);
            if (aa > start) {
                const double u = (aa - start) / (sigma_max - start);
                v *= 0.5 * (1.0 + std::cos(kPi * std::min(1.0, u)));
            }
        }
        mult[m] = v;
    }

    RadonGrid out_grid = g;
    out_grid.n_p = (P - 1) * U + 1;
    out_grid.dp = g.dp / U;
    RadonData out(out_grid, RadonKind::filtered);

    const fft::Plan1D fwd(Nf, fft::kForward);
    const fft::Plan1D bwd(Nu, fft::kBackward);

    std::vector<std::complex<double>> row(Nf), spec_row(Nf), up(Nu), filt(Nu);
    for (int q = 0; q < g.n_alpha; ++q) {
        std::fill(row.begin(), row.end(), std::complex<double>(0.0, 0.0));
        for (int r = 0; r < P; ++r) row[r] = data.at(q, r);
        fwd.execute(row.data(), spec_row.data());
        for (int m = 0; m < Nf; ++m) spec_row[m] *= mult[m];

        std::fill(up.begin(), up.end(), std::complex<double>(0.0, 0.0));
        for (int m = 0; m < Nf / 2; ++m) up[m] = spec_row[m];
        for (int m = Nf / 2 + 1; m < Nf; ++m) up[Nu - Nf + m] = spec_row[m];
        up[Nf / 2] = 0.5 * spec_row[Nf / 2];
        up[Nu - Nf / 2] += 0.5 * spec_row[Nf / 2];
        bwd.execute(up.data(), filt.data());

        for (int r = 0; r < out_grid.n_p; ++r) out.at(q, r) = filt[r].real() / Nf;
    }
    return out;
}

Image backproject(const RadonData& filtered, int image_n, int threads) {
    const RadonGrid& g = filtered.grid;
    g.validate();
    Image img(image_n, image_n);
    const double dalpha = 2.0 * kPi / g.n_alpha;

    std::vector<double> cosA(g.n_alpha), sinA(g.n_alpha);
    for (int q = 0; q < g.n_alpha; ++q) {
        cosA[q] = std::cos(g.alpha(q));
        sinA[q] = std::sin(g.alpha(q));
    }

    parallel_for(threads, 0, image_n, [&](long j) {
        const double y = img.y(static_cast<int>(j));
        for (int i = 0; i < image_n; ++i) {
            const double x = img.x(i);
            double acc = 0.0;
            for (int q = 0; q < g.n_alpha; ++q) {
                const double t = (cosA[q] * x + sinA[q] * y - g.p0) / g.dp;
                const int i0 = static_cast<int>(std::floor(t));
                if (i0 < 0 || i0 + 1 >= g.n_p) continue;
                const double fr = t - i0;
                acc += (1.0 - fr) * filtered.at(q, i0) + fr * filtered.at(q, i0 + 1);
            }
            img.at(static_cast<int>(j), i) = acc * dalpha;
        }
    });
    return img;
}

double backproject_at(const RadonData& filtered, double x, double y) {
    const RadonGrid& g = filtered.grid;
    double acc = 0.0;
    for (int q = 0; q < g.n_alpha; ++q) {
        const double a = g.alpha(q);
        const double t = (std::cos(a) * x + std::sin(a) * y - g.p0) / g.dp;
        const int i0 = static_cast<int>(std::floor(t));
        if (i0 < 0 || i0 + 1 >= g.n_p) continue;
        const double fr = t - i0;
        acc += (1.0 - fr) * filtered.at(q, i0) + fr * filtered.at(q, i0 + 1);
    }
    return acc * 2.0 * kPi / g.n_alpha;
}

Image invert(const RadonData& data, int image_n, const FilterSpec& spec, int threads) {
    return backproject(filter_projections(data, spec), image_n, threads);
}

Image invert(const RadonData& data, int image_n, int threads) {
    return invert(data, image_n, FilterSpec::for_kind(data.kind), threads);
}

}  // namespace tat
