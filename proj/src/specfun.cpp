#include "tat/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace tat::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long double kPiL = 3.141592653589793238462643383279503L;
constexpr long double kEulerGammaL = 0.577215664901532860606512090082402L;

constexpr double kYOverflowLimit = 1e300;
constexpr double kRescaleLimit = 1e250;

// Downward recurrence for J_0..J_k_max; the running sum J~_0 + 2*sum J~_even
// provides the normalization.  Returns false if the start order was too low
// (caller retries with a larger offset).
bool miller_j(int k_max, double x, int start, std::vector<double>& out) {
    const double two_over_x = 2.0 / x;
    long double jp = 0.0L;        // J~_{k+1}
    long double jc = 1e-30L;      // J~_k
    long double sum = 0.0L;       // J~_0 + 2 sum_{m>=1} J~_{2m}
    if (start % 2 == 0) sum += 2.0L * jc;
    for (int k = start; k >= 1; --k) {
        long double jm = two_over_x * k * jc - jp;
        jp = jc;
        jc = jm;
        int km = k - 1;
        if (km <= k_max) out[km] = static_cast<double>(jc);
        if (km == 0)
            sum += jc;
        else if (km % 2 == 0)
            sum += 2.0L * jc;
        if (std::abs(static_cast<double>(jc)) > kRescaleLimit) {
            const long double s = 1e-250L;
            jc *= s;
            jp *= s;
            sum *= s;
            for (int m = km; m <= k_max; ++m) out[m] = static_cast<double>(out[m] * s);
        }
    }
    if (sum == 0.0L || !std::isfinite(static_cast<double>(sum))) return false;
    const long double norm = 1.0L / sum;
    for (int m = 0; m <= k_max; ++m) out[m] = static_cast<double>(out[m] * norm);
    return std::isfinite(out[0]);
}

long double harmonic(int n) {
    long double h = 0.0L;
    for (int i = 1; i <= n; ++i) h += 1.0L / i;
    return h;
}

// Power series for J_0, J_1, Y_0, Y_1; accurate to ~1e-14 relative up to
// x ~ 16 thanks to the long double accumulation.
void jy01_series(double xd, double& j0, double& j1, double& y0, double& y1) {
    const long double x = xd;
    const long double q = x * x / 4.0L;

    long double term = 1.0L, s_j0 = 1.0L;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<long double>(m) * m);
        s_j0 += term;
        if (std::abs(static_cast<double>(term)) < 1e-22) break;
    }
    term = 1.0L;
    long double s_j1 = 1.0L;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<long double>(m) * (m + 1));
        s_j1 += term;
        if (std::abs(static_cast<double>(term)) < 1e-22) break;
    }
    const long double j0l = s_j0;
    const long double j1l = (x / 2.0L) * s_j1;

    // Y_0 = (2/pi)[(ln(x/2)+gamma) J_0 + sum_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2]
    long double s = 0.0L, qk = 1.0L, kfact2 = 1.0L, hk = 0.0L;
    for (int k = 1; k < 200; ++k) {
        qk *= q;
        kfact2 *= static_cast<long double>(k) * k;
        hk += 1.0L / k;
        long double t = ((k % 2) ? 1.0L : -1.0L) * hk * qk / kfact2;
        s += t;
        if (std::abs(static_cast<double>(t)) < 1e-22 && k > 4) break;
    }
    const long double lg = std::log(static_cast<long double>(x) / 2.0L) + kEulerGammaL;
    const long double y0l = (2.0L / kPiL) * (lg * j0l + s);

    // Y_1 = (2/pi) ln(x/2) J_1 - 2/(pi x)
    //       - (x/(2 pi)) sum_{k>=0} (psi(k+1)+psi(k+2)) (-q)^k/(k!(k+1)!)
    s = 0.0L;
    long double mqk = 1.0L, kf = 1.0L, k1f = 1.0L;
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            mqk *= -q;
            kf *= k;
            k1f *= (k + 1);
        }
        long double psi_sum = -2.0L * kEulerGammaL + harmonic(k) + harmonic(k + 1);
        long double t = psi_sum * mqk / (kf * k1f);
        s += t;
        if (std::abs(static_cast<double>(t)) < 1e-22 && k > 4) break;
    }
    const long double y1l = (2.0L / kPiL) * std::log(static_cast<long double>(x) / 2.0L) * j1l -
                            2.0L / (kPiL * x) - (x / (2.0L * kPiL)) * s;

    j0 = static_cast<double>(j0l);
    j1 = static_cast<double>(j1l);
    y0 = static_cast<double>(y0l);
    y1 = static_cast<double>(y1l);
}

// Hankel's expansion J_nu, Y_nu = sqrt(2/(pi x)) (P, Q phase combination),
// truncated at the smallest term.  Floor error ~ e^{-2x}, fine for x > 12.
void jy_asymptotic(int nu, double xd, double& jv, double& yv) {
    const long double x = xd;
    const long double mu = 4.0L * nu * nu;
    long double p = 1.0L, q = 0.0L;
    long double term = 1.0L;
    long double prev_mag = 1e30L;
    for (int k = 1; k < 60; ++k) {
        long double factor = (mu - (2.0L * k - 1.0L) * (2.0L * k - 1.0L)) / (8.0L * x * k);
        term *= factor;
        long double mag = std::abs(static_cast<double>(term));
        if (mag > prev_mag) break;  // divergence point reached
        prev_mag = mag;
        if (k % 2 == 1) {
            q += ((k % 4 == 1) ? term : -term);
        } else {
            p += ((k % 4 == 2) ? -term : term);
        }
        if (mag < 1e-20) break;
    }
    const long double chi = x - (0.5L * nu + 0.25L) * kPiL;
    const long double c = std::cos(chi), s = std::sin(chi);
    const long double amp = std::sqrt(2.0L / (kPiL * x));
    jv = static_cast<double>(amp * (p * c - q * s));
    yv = static_cast<double>(amp * (p * s + q * c));
}

}  // namespace

HankelTable bessel_jy(int k_max, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("bessel_jy: lambda must be positive");
    if (k_max < 0) throw std::invalid_argument("bessel_jy: k_max must be >= 0");

    HankelTable t;
    t.lambda = lambda;
    t.k_max = k_max;
    t.j.assign(k_max + 1, 0.0);
    t.y.assign(k_max + 1, 0.0);
    t.ok.assign(k_max + 1, 1);

    const int base = std::max(k_max, static_cast<int>(std::ceil(lambda)));
    int offset = 40 + static_cast<int>(18.0 * std::cbrt(static_cast<double>(base) + 1.0));
    bool good = false;
    for (int attempt = 0; attempt < 3 && !good; ++attempt, offset *= 2)
        good = miller_j(k_max, lambda, base + offset, t.j);
    if (!good) throw std::runtime_error("bessel_jy: Miller recurrence failed to converge");

    double y0, y1;
    if (lambda <= 12.0) {
        double j0s, j1s;
        jy01_series(lambda, j0s, j1s, y0, y1);
    } else {
        double jv;
        jy_asymptotic(0, lambda, jv, y0);
        jy_asymptotic(1, lambda, jv, y1);
    }
    t.y[0] = y0;
    if (k_max >= 1) t.y[1] = y1;

    // Upward recurrence is stable for Y (the dominant solution).
    double ym = y0, yc = (k_max >= 1) ? y1 : y0;
    for (int k = 1; k < k_max; ++k) {
        double yn = (2.0 * k / lambda) * yc - ym;
        if (!std::isfinite(yn) || std::abs(yn) > kYOverflowLimit) {
            for (int m = k + 1; m <= k_max; ++m) {
                t.y[m] = 0.0;
                t.ok[m] = 0;
            }
            break;
        }
        t.y[k + 1] = yn;
        ym = yc;
        yc = yn;
    }
    return t;
}

std::complex<double> hankel1_neg(int k, const HankelTable& table) {
    const int a = std::abs(k);
    const std::complex<double> h = table.hankel1(a);
    const std::complex<double> hc = std::conj(h);
    return ((a - 1) % 2 == 0) ? hc : -hc;  // (-1)^(|k|-1)
}

std::complex<double> safe_reciprocal(std::complex<double> h, bool ok) {
    if (!ok) return {0.0, 0.0};
    // Smith's scaled division avoids overflow of |h|^2.
    const double re = h.real(), im = h.imag();
    if (std::abs(re) >= std::abs(im)) {
        const double r = im / re;
        const double den = re + im * r;
        return {1.0 / den, -r / den};
    }
    const double r = re / im;
    const double den = re * r + im;
    return {r / den, -1.0 / den};
}

std::complex<double> hankel1_reciprocal(const HankelTable& table, int k, bool negative_lambda) {
    const int a = std::abs(k);
    std::complex<double> rec = safe_reciprocal(table.hankel1(a), table.ok[a] != 0);
    if (negative_lambda) {
        rec = std::conj(rec);
        if ((a - 1) % 2 != 0) rec = -rec;
    }
    return rec;
}

double wronskian(const HankelTable& table, int k) {
    return table.j[k + 1] * table.y[k] - table.j[k] * table.y[k + 1];
}

}  // namespace tat::specfun
