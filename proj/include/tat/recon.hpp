#pragma once

#include <complex>
#include <vector>

#include "tat/forward.hpp"
#include "tat/grids.hpp"

namespace tat {

// Spectra of the boundary data and of the radiating-solution expansion.
// Rows are angular orders k = -M/2..M/2-1 (row index k + M/2); columns are
// frequencies lambda_l, l = -l_nyq..l_nyq (column index l + l_nyq).
struct SpectralCoefficients {
    AngularGrid grid_theta;
    FrequencyGrid grid_freq;
    std::vector<std::complex<double>> b;
    std::vector<std::complex<double>> a;

    int n_rows() const { return grid_theta.m_detectors; }
    int n_cols() const { return grid_freq.n_cols(); }
    std::complex<double>& b_at(int k, int l) {
        return b[static_cast<size_t>(k + n_rows() / 2) * n_cols() + (l + grid_freq.l_nyq)];
    }
    std::complex<double> b_at(int k, int l) const {
        return b[static_cast<size_t>(k + n_rows() / 2) * n_cols() + (l + grid_freq.l_nyq)];
    }
    std::complex<double>& a_at(int k, int l) {
        return a[static_cast<size_t>(k + n_rows() / 2) * n_cols() + (l + grid_freq.l_nyq)];
    }
    std::complex<double> a_at(int k, int l) const {
        return a[static_cast<size_t>(k + n_rows() / 2) * n_cols() + (l + grid_freq.l_nyq)];
    }
};

// Zero-extend for t < 0 (implicit), raised-cosine decay on [T, T+b], then a
// fixed interior bump scaled so the discrete integral of the output is zero.
Sinogram prepare_h(const Sinogram& s, double T, double b);

// b_k(lambda_l) = (2 pi)^-2 int_0^2pi [int h e^{i lambda t} dt] e^{-ik theta} dtheta,
// trapezoid + zero-padded 2-D FFT, normalized to the continuous integral.
SpectralCoefficients compute_bk(const Sinogram& h, const FrequencyGrid& fgrid);

// a_{k,l} = 2i(-i)^{|k|} b_k(lambda_l) / H1_{|k|}(lambda_l) for l != 0, else 0.
// Columns whose Hankel value overflows are exactly zero.
void compute_akl(SpectralCoefficients& spect, int threads);

struct SynthesisResult {
    RadonData data;                 // kind dF~/dp
    double imag_residual = 0.0;     // |Im|_inf / |Re|_inf before discarding
};

// dF/dp(omega(alpha_q), p_r) ~= 2*dlambda * Re sum_k sum_l a_{k,l}
// e^{i lambda_l p} e^{i k alpha}, evaluated as one backward 2-D FFT; p_r
// must satisfy dp*dlambda = 2 pi / n_padded so the phases are DFT phases.
SynthesisResult synthesize_dF(const SpectralCoefficients& spect, const RadonGrid& rgrid);

// Radon transform of H1_{|k|}(lambda r) e^{ik theta} / H1_{|k|}(lambda) at
// (omega(alpha), p): 2 (-i)^{|k|} / (lambda H1_{|k|}(lambda)) e^{i lambda p} e^{ik alpha}.
std::complex<double> closed_form_Ik(int k, double alpha, double p, double lambda);

// Fill alpha in (pi, 2pi) by value(alpha, p) = -value(alpha - pi, -p).
RadonData symmetrize(const RadonData& dF_approx);

// Cumulative trapezoid from p = p_min, then subtract (A(p_min)+A(p_max))/2
// (least-squares choice of the integration constant for F(+-1) = 0).
RadonData antidifferentiate(const RadonData& dG);

enum class ReconMode { full, reduced, naive };

struct PipelineOptions {
    double T = 2.0;
    double tail_fraction = 0.125;
    int n_alpha = 0;        // 0: use the detector count
    int threads = 1;
};

// Boundary data to projection derivatives: prepare, b, a, synthesize, and
// (mode reduced) the symmetry completion.  Mask application for reduced and
// naive modes happens here.
RadonData run_pipeline(const Sinogram& s, const AcquisitionConfig& cfg, ReconMode mode,
                       const PipelineOptions& opt = {});

}  // namespace tat
