#include "tat/recon.hpp"

#include <cmath>
#include <stdexcept>

#include "tat/fft.hpp"
#include "tat/specfun.hpp"
#include "tat/threading.hpp"

namespace tat {

namespace {

// 2i * (-i)^{|k|}, period 4 in |k|.
std::complex<double> a_phase(int k) {
    switch (std::abs(k) % 4) {
        case 0: return {0.0, 2.0};
        case 1: return {2.0, 0.0};
        case 2: return {0.0, -2.0};
        default: return {-2.0, 0.0};
    }
}

double bump(double u) {
    // (1-u^2)^4 on (-1,1), zero outside; vanishes with three derivatives.
    if (u <= -1.0 || u >= 1.0) return 0.0;
    const double w = 1.0 - u * u;
    return w * w * w * w;
}

}  // namespace

Sinogram prepare_h(const Sinogram& s, double T, double b) {
    const TimeGrid& gt = s.grid_t;
    if (b <= 4.0 * gt.dt)
        throw std::invalid_argument("prepare_h: cutoff interval shorter than 4 samples");
    const int i_T = static_cast<int>(std::llround(T / gt.dt));
    if (std::abs(i_T * gt.dt - T) > 1e-9)
        throw std::invalid_argument("prepare_h: T must be a multiple of dt");
    if ((gt.n_extended - 1) * gt.dt < T)
        throw std::invalid_argument("prepare_h: sinogram does not reach T");

    const int M = s.grid_theta.m_detectors;
    const int n_ext = gt.n_extended;
    Sinogram out = s;

    for (int j = 0; j < M; ++j) {
        for (int i = i_T; i < n_ext; ++i) {
            const double t = gt.t(i);
            double w = 0.0;
            if (t < T + b) w = 0.5 * (1.0 + std::cos(kPi * (t - T) / b));
            out.at(j, i) *= w;
        }
    }

    double total = 0.0;
    for (double v : out.values) total += v;
    double phi_sum = 0.0;
    std::vector<double> phi(n_ext, 0.0);
    for (int i = i_T; i < n_ext; ++i) {
        phi[i] = bump(2.0 * (gt.t(i) - T) / b - 1.0);
        phi_sum += phi[i];
    }
    if (phi_sum <= 0.0) throw std::runtime_error("prepare_h: degenerate correction bump");
    const double c = -total / (M * phi_sum);
    for (int j = 0; j < M; ++j)
        for (int i = i_T; i < n_ext; ++i) out.at(j, i) += c * phi[i];
    return out;
}

SpectralCoefficients compute_bk(const Sinogram& h, const FrequencyGrid& fgrid) {
    const int M = h.grid_theta.m_detectors;
    const int N = h.grid_t.n_padded;
    if (fgrid.l_nyq != N / 2)
        throw std::invalid_argument("compute_bk: frequency grid does not match n_padded");

    std::vector<std::complex<double>> in(static_cast<size_t>(M) * N, {0.0, 0.0});
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < h.grid_t.n_extended; ++i)
            in[static_cast<size_t>(j) * N + i] = h.at(j, i);

    std::vector<std::complex<double>> spec(static_cast<size_t>(M) * N);
    fft::dft_2d(M, N, in.data(), spec.data(), fft::kForward);

    SpectralCoefficients out;
    out.grid_theta = h.grid_theta;
    out.grid_freq = fgrid;
    out.b.assign(static_cast<size_t>(M) * fgrid.n_cols(), {0.0, 0.0});
    out.a.assign(static_cast<size_t>(M) * fgrid.n_cols(), {0.0, 0.0});

    const double scale = h.grid_t.dt / (2.0 * kPi * M);
    std::vector<int> mbin(fgrid.n_cols());
    for (int l = -fgrid.l_nyq; l <= fgrid.l_nyq; ++l)
        mbin[l + fgrid.l_nyq] = ((N - l) % N + N) % N;
    for (int k = -M / 2; k < M / 2; ++k) {
        const int kbin = (k + M) % M;
        const auto* row = &spec[static_cast<size_t>(kbin) * N];
        auto* brow = &out.b[static_cast<size_t>(k + M / 2) * fgrid.n_cols()];
        for (int c = 0; c < fgrid.n_cols(); ++c) brow[c] = scale * row[mbin[c]];
    }
    return out;
}

void compute_akl(SpectralCoefficients& spect, int threads) {
    const int M = spect.n_rows();
    const int l_nyq = spect.grid_freq.l_nyq;
    const int k_max = M / 2;

    parallel_for(threads, 1, l_nyq + 1, [&](long l) {
        const double lambda = spect.grid_freq.lambda(static_cast<int>(l));
        const specfun::HankelTable table = specfun::bessel_jy(k_max, lambda);
        for (int k = -M / 2; k < M / 2; ++k) {
            const std::complex<double> phase = a_phase(k);
            const std::complex<double> rp = specfun::hankel1_reciprocal(table, k, false);
            const std::complex<double> rn = specfun::hankel1_reciprocal(table, k, true);
            spect.a_at(k, static_cast<int>(l)) = phase * spect.b_at(k, static_cast<int>(l)) * rp;
            spect.a_at(k, static_cast<int>(-l)) = phase * spect.b_at(k, static_cast<int>(-l)) * rn;
        }
    });
    for (int k = -M / 2; k < M / 2; ++k) spect.a_at(k, 0) = {0.0, 0.0};
}

SynthesisResult synthesize_dF(const SpectralCoefficients& spect, const RadonGrid& rgrid) {
    const int M = spect.n_rows();
    const int l_nyq = spect.grid_freq.l_nyq;
    const int N = 2 * l_nyq;
    const double dlambda = spect.grid_freq.dlambda;

    rgrid.validate();
    if (rgrid.n_alpha < M || rgrid.n_alpha % M != 0)
        throw std::invalid_argument("synthesize_dF: n_alpha must be a multiple of the detector count");
    if (!rgrid.p_symmetric())
        throw std::invalid_argument("synthesize_dF: p grid must be symmetric about 0");
    if (std::abs(rgrid.dp * dlambda * N / (2.0 * kPi) - 1.0) > 1e-9)
        throw std::invalid_argument("synthesize_dF: dp*dlambda must equal 2*pi/n_padded");
    if (rgrid.n_p > N)
        throw std::invalid_argument("synthesize_dF: p window exceeds one FFT period");

    const int A = rgrid.n_alpha;
    const int n_cols = spect.n_cols();
    std::vector<int> lbin(n_cols);
    for (int l = -l_nyq; l <= l_nyq; ++l) lbin[l + l_nyq] = ((l % N) + N) % N;
    std::vector<std::complex<double>> bins(static_cast<size_t>(A) * N, {0.0, 0.0});
    for (int k = -M / 2; k < M / 2; ++k) {
        const int kbin = ((k % A) + A) % A;
        auto* row = &bins[static_cast<size_t>(kbin) * N];
        const auto* arow = &spect.a[static_cast<size_t>(k + M / 2) * n_cols];
        for (int c = 0; c < n_cols; ++c) {
            const double w = (c == 0 || c == n_cols - 1) ? 0.5 : 1.0;  // shared Nyquist bin
            row[lbin[c]] += w * arow[c];
        }
    }

    std::vector<std::complex<double>> synth(static_cast<size_t>(A) * N);
    fft::dft_2d(A, N, bins.data(), synth.data(), fft::kBackward);

    SynthesisResult res{RadonData(rgrid, RadonKind::dF_approx_dp), 0.0};
    const int n_half = (rgrid.n_p - 1) / 2;
    double max_re = 0.0, max_im = 0.0;
    for (int q = 0; q < A; ++q) {
        for (int r = 0; r < rgrid.n_p; ++r) {
            const int jbin = (((r - n_half) % N) + N) % N;
            const std::complex<double> v = synth[static_cast<size_t>(q) * N + jbin];
            res.data.at(q, r) = 2.0 * dlambda * v.real();
            max_re = std::max(max_re, std::abs(v.real()));
            max_im = std::max(max_im, std::abs(v.imag()));
        }
    }
    res.imag_residual = (max_re > 0.0) ? max_im / max_re : max_im;
    return res;
}

std::complex<double> closed_form_Ik(int k, double alpha, double p, double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("closed_form_Ik: lambda must be nonzero");
    const int ka = std::abs(k);
    const specfun::HankelTable table = specfun::bessel_jy(ka, std::abs(lambda));
    const std::complex<double> rec = specfun::hankel1_reciprocal(table, k, lambda < 0.0);
    std::complex<double> phase;
    switch (ka % 4) {  // (-i)^{|k|}
        case 0: phase = {1.0, 0.0}; break;
        case 1: phase = {0.0, -1.0}; break;
        case 2: phase = {-1.0, 0.0}; break;
        default: phase = {0.0, 1.0}; break;
    }
    const std::complex<double> osc =
        std::exp(std::complex<double>(0.0, lambda * p + k * alpha));
    return 2.0 * phase / lambda * rec * osc;
}

RadonData symmetrize(const RadonData& dF_approx) {
    const RadonGrid& g = dF_approx.grid;
    g.validate();
    if (!g.p_symmetric())
        throw std::invalid_argument("symmetrize: p grid must be symmetric about 0");
    RadonData out = dF_approx;
    out.kind = RadonKind::dG_dp;
    const int half = g.n_alpha / 2;
    for (int q = half + 1; q < g.n_alpha; ++q)
        for (int r = 0; r < g.n_p; ++r)
            out.at(q, r) = -dF_approx.at(q - half, g.n_p - 1 - r);
    return out;
}

RadonData antidifferentiate(const RadonData& dG) {
    RadonKind out_kind;
    switch (dG.kind) {
        case RadonKind::dG_dp: out_kind = RadonKind::G; break;
        case RadonKind::dF_dp: out_kind = RadonKind::F; break;
        case RadonKind::dF_approx_dp: out_kind = RadonKind::F_approx; break;
        default:
            throw std::invalid_argument("antidifferentiate: input must be a derivative kind");
    }
    const RadonGrid& g = dG.grid;
    RadonData out(g, out_kind);
    for (int q = 0; q < g.n_alpha; ++q) {
        double acc = 0.0;
        out.at(q, 0) = 0.0;
        for (int r = 1; r < g.n_p; ++r) {
            acc += 0.5 * g.dp * (dG.at(q, r - 1) + dG.at(q, r));
            out.at(q, r) = acc;
        }
        const double shift = 0.5 * acc;  // (A(p_min) + A(p_max)) / 2 with A(p_min) = 0
        for (int r = 0; r < g.n_p; ++r) out.at(q, r) -= shift;
    }
    return out;
}

RadonData run_pipeline(const Sinogram& s, const AcquisitionConfig& cfg, ReconMode mode,
                       const PipelineOptions& opt) {
    const double T = opt.T;
    const double b = opt.tail_fraction * T;
    const Sinogram* input = &s;
    Sinogram masked;
    if (mode != ReconMode::full) {
        masked = apply_reduction(s, cfg);
        input = &masked;
    }

    Sinogram h = prepare_h(*input, T, b);
    const FrequencyGrid fgrid = FrequencyGrid::from_time(h.grid_t);
    SpectralCoefficients spect = compute_bk(h, fgrid);
    compute_akl(spect, opt.threads);

    const double dp = h.grid_t.dt;
    const int n_half = static_cast<int>(std::llround(1.0 / dp));
    if (std::abs(n_half * dp - 1.0) > 1e-9)
        throw std::invalid_argument("run_pipeline: 1/dt must be an integer sample count");
    const int n_alpha = (opt.n_alpha > 0) ? opt.n_alpha : s.grid_theta.m_detectors;
    const RadonGrid rgrid = RadonGrid::symmetric(n_alpha, n_half, dp);

    SynthesisResult synth = synthesize_dF(spect, rgrid);
    if (synth.imag_residual > 1e-9)
        throw std::runtime_error("run_pipeline: synthesis imaginary residual " +
                                 std::to_string(synth.imag_residual));

    switch (mode) {
        case ReconMode::full:
            synth.data.kind = RadonKind::dF_dp;
            return synth.data;
        case ReconMode::naive:
            return synth.data;  // dF~/dp used on all alpha, no completion
        case ReconMode::reduced:
            return symmetrize(synth.data);
    }
    throw std::logic_error("run_pipeline: unknown mode");
}

}  // namespace tat
