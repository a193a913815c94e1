#pragma once

#include <complex>
#include <vector>

namespace tat::fft {

// Thin FFTW front end.  All plans are created with FFTW_ESTIMATE so the
// chosen algorithm (and hence the output bits) depends only on the transform
// size, never on runtime measurements.  Plan creation is serialized
// internally; execution is safe to call from worker threads.

// out[k0][k1] = sum_{j0,j1} in[j0][j1] * exp(sign*2*pi*i*(k0*j0/n0 + k1*j1/n1))
void dft_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out, int sign);

// Reusable 1-D complex transform of fixed length (unnormalized).
class Plan1D {
  public:
    Plan1D(int n, int sign);
    ~Plan1D();
    Plan1D(const Plan1D&) = delete;
    Plan1D& operator=(const Plan1D&) = delete;

    int size() const { return n_; }
    // in and out must not alias.
    void execute(const std::complex<double>* in, std::complex<double>* out) const;

  private:
    int n_;
    void* plan_;
};

inline constexpr int kForward = -1;
inline constexpr int kBackward = +1;

}  // namespace tat::fft
