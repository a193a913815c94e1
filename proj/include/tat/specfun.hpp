#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace tat::specfun {

// J_k(lambda), Y_k(lambda) for k = 0..k_max at one positive argument.
// Entries where Y_k would overflow carry ok = 0 (y_overflow) and Y = 0; in
// that regime |H^(1)_k| is effectively infinite and only its reciprocal (= 0)
// is ever used.
struct HankelTable {
    double lambda = 0.0;
    int k_max = 0;
    std::vector<double> j;        // 0..k_max
    std::vector<double> y;        // 0..k_max, 0 where flagged
    std::vector<uint8_t> ok;      // 1 ok, 0 y_overflow

    std::complex<double> hankel1(int k) const { return {j[k], y[k]}; }
};

// J by Miller's downward recurrence normalized with J_0 + 2*sum J_{2m} = 1;
// Y_0, Y_1 by power series (lambda <= 12) or the Hankel asymptotic expansion
// with phase functions (lambda > 12), then upward recurrence in the order.
HankelTable bessel_jy(int k_max, double lambda);

// H^(1)_{|k|}(-s) = (-1)^(|k|-1) * conj(H^(1)_{|k|}(s)); table holds values at s.
std::complex<double> hankel1_neg(int k, const HankelTable& table);

// 1/h, or exactly 0 for flagged entries; never NaN/Inf.
std::complex<double> safe_reciprocal(std::complex<double> h, bool ok);

// 1/H^(1)_{|k|}(lambda) honoring flags; negative_lambda applies the
// reflection identity to the reciprocal.
std::complex<double> hankel1_reciprocal(const HankelTable& table, int k, bool negative_lambda);

// Wronskian J_{k+1} Y_k - J_k Y_{k+1}; equals 2/(pi*lambda) for healthy pairs.
double wronskian(const HankelTable& table, int k);

}  // namespace tat::specfun
