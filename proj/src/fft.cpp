#include "tat/fft.hpp"

#include <fftw3.h>
#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace tat::fft {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// The pipeline cycles through buffers in the hundred-megabyte range; with
// glibc defaults those are mmap'd and returned to the kernel on free, so
// every run pays the full page-fault cost again.
void keep_large_blocks_once() {
#if defined(__GLIBC__)
    static std::once_flag flag;
    std::call_once(flag, [] {
        mallopt(M_MMAP_THRESHOLD, 1 << 30);
        mallopt(M_TRIM_THRESHOLD, 1 << 30);
    });
#endif
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

// Plans are cached per shape; FFTW_ESTIMATE keeps the chosen algorithm a
// function of the shape alone, so repeated and parallel runs stay
// bit-identical.
fftw_plan cached_plan_1d(int n, int sign) {
    using Key = std::tuple<int, int>;
    static std::map<Key, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    const Key key{n, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    fftw_plan plan = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()),
                                      sign == kForward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    if (!plan) throw std::runtime_error("fft: FFTW plan creation failed");
    cache.emplace(key, plan);
    return plan;
}

void fft_rows(int n_rows, int n, const std::complex<double>* in, std::complex<double>* out,
              int sign) {
    fftw_plan plan = cached_plan_1d(n, sign);
    for (int r = 0; r < n_rows; ++r)
        fftw_execute_dft(plan, as_fftw(const_cast<std::complex<double>*>(in) +
                                       static_cast<size_t>(r) * n),
                         as_fftw(out + static_cast<size_t>(r) * n));
}

void blocked_transpose(const std::complex<double>* src, std::complex<double>* dst, int n0,
                       int n1) {
    constexpr int B = 64;
    for (int jb = 0; jb < n0; jb += B)
        for (int ib = 0; ib < n1; ib += B) {
            const int jmax = std::min(jb + B, n0), imax = std::min(ib + B, n1);
            for (int j = jb; j < jmax; ++j)
                for (int i = ib; i < imax; ++i)
                    dst[static_cast<size_t>(i) * n0 + j] = src[static_cast<size_t>(j) * n1 + i];
        }
}
}  // namespace

// Row FFTs, transpose, row FFTs, transpose back: contiguous passes beat the
// strided column pass of a native 2-D plan at the sizes used here.  The
// scratch buffer is pooled; repeated large transforms would otherwise spend
// more time faulting fresh pages than computing.
void dft_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out, int sign) {
    if (n0 <= 0 || n1 <= 0) throw std::invalid_argument("dft_2d: bad size");
    keep_large_blocks_once();
    if (n0 == 1) {
        fft_rows(1, n1, in, out, sign);
        return;
    }
    static std::mutex scratch_mutex;
    static std::vector<std::complex<double>> scratch;
    std::lock_guard<std::mutex> lock(scratch_mutex);
    if (scratch.size() < static_cast<size_t>(n0) * n1)
        scratch.resize(static_cast<size_t>(n0) * n1);
    std::complex<double>* tmp = scratch.data();
    fft_rows(n0, n1, in, tmp, sign);
    blocked_transpose(tmp, out, n0, n1);
    fft_rows(n1, n0, out, tmp, sign);
    blocked_transpose(tmp, out, n1, n0);
}

Plan1D::Plan1D(int n, int sign) : n_(n), plan_(nullptr) {
    if (n <= 0) throw std::invalid_argument("Plan1D: bad size");
    std::vector<std::complex<double>> a(n), b(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()),
                             sign == kForward ? FFTW_FORWARD : FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    if (!plan_) throw std::runtime_error("Plan1D: FFTW plan creation failed");
}

Plan1D::~Plan1D() {
    if (plan_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
}

void Plan1D::execute(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(plan_),
                     as_fftw(const_cast<std::complex<double>*>(in)), as_fftw(out));
}

}  // namespace tat::fft
