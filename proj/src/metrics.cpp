#include "tat/metrics.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "tat/fft.hpp"

namespace tat {

namespace {

bool in_region(Region region, double x, double y) {
    switch (region) {
        case Region::unit_disk: return x * x + y * y < 1.0;
        case Region::upper_half: return x * x + y * y < 1.0 && y > 0.0;
        case Region::all: return true;
    }
    return true;
}

}  // namespace

double rel_error(const Image& a, const Image& ref, Norm norm, Region region) {
    if (a.nx != ref.nx || a.ny != ref.ny)
        throw std::invalid_argument("rel_error: image grids differ");
    double num2 = 0.0, den2 = 0.0, num_inf = 0.0, den_inf = 0.0;
    for (int j = 0; j < a.ny; ++j) {
        const double y = a.y(j);
        for (int i = 0; i < a.nx; ++i) {
            if (!in_region(region, a.x(i), y)) continue;
            const double d = a.at(j, i) - ref.at(j, i);
            const double r = ref.at(j, i);
            num2 += d * d;
            den2 += r * r;
            num_inf = std::max(num_inf, std::abs(d));
            den_inf = std::max(den_inf, std::abs(r));
        }
    }
    if (den2 == 0.0) throw std::invalid_argument("rel_error: reference vanishes on the region");
    return (norm == Norm::L2) ? std::sqrt(num2 / den2) : num_inf / den_inf;
}

double smoothness_diagnostic(const Image& diff, double cutoff_fraction) {
    if (!(cutoff_fraction > 0.0 && cutoff_fraction < 1.0))
        throw std::invalid_argument("smoothness_diagnostic: cutoff_fraction must be in (0,1)");
    if (diff.nx != diff.ny) throw std::invalid_argument("smoothness_diagnostic: square image");
    const int n = diff.nx;

    std::vector<std::complex<double>> buf(static_cast<size_t>(n) * n), spec(buf.size());
    for (int j = 0; j < n; ++j) {
        const double y = diff.y(j);
        for (int i = 0; i < n; ++i) {
            const double r = std::hypot(diff.x(i), y);
            double w = 0.0;
            if (r <= 0.80)
                w = 1.0;
            else if (r < 0.95) {
                const double c = std::cos(0.5 * kPi * (r - 0.80) / 0.15);
                w = c * c;
            }
            buf[static_cast<size_t>(j) * n + i] = w * diff.at(j, i);
        }
    }
    fft::dft_2d(n, n, buf.data(), spec.data(), fft::kForward);

    const double dx = 2.0 / n;
    const double cutoff = cutoff_fraction * kPi / dx;
    const double dxi = 2.0 * kPi / (n * dx);
    double total = 0.0, high = 0.0;
    for (int j = 0; j < n; ++j) {
        const int js = (j <= n / 2) ? j : j - n;
        for (int i = 0; i < n; ++i) {
            const int is = (i <= n / 2) ? i : i - n;
            const double e = std::norm(spec[static_cast<size_t>(j) * n + i]);
            total += e;
            if (std::hypot(is * dxi, js * dxi) > cutoff) high += e;
        }
    }
    return (total > 0.0) ? high / total : 0.0;
}

std::string ConsistencyReport::to_kv() const {
    std::ostringstream os;
    os.precision(12);
    os << "mass_deviation = " << mass_deviation << "\n"
       << "symmetry_defect = " << symmetry_defect << "\n";
    return os.str();
}

std::string ConsistencyReport::to_csv_row() const {
    std::ostringstream os;
    os.precision(12);
    os << mass_deviation << "," << symmetry_defect;
    return os.str();
}

ConsistencyReport projection_consistency(const RadonData& data) {
    if (data.kind != RadonKind::F && data.kind != RadonKind::G && data.kind != RadonKind::F_approx)
        throw std::invalid_argument("projection_consistency: expects projection values");
    const RadonGrid& g = data.grid;

    ConsistencyReport rep;
    std::vector<double> mass(g.n_alpha, 0.0);
    double mean = 0.0;
    for (int q = 0; q < g.n_alpha; ++q) {
        double acc = 0.0;
        for (int r = 1; r < g.n_p; ++r) acc += 0.5 * g.dp * (data.at(q, r - 1) + data.at(q, r));
        mass[q] = acc;
        mean += acc;
    }
    mean /= g.n_alpha;
    for (double m : mass) rep.mass_deviation = std::max(rep.mass_deviation, std::abs(m - mean));

    if (g.n_alpha % 2 == 0 && g.p_symmetric()) {
        const int half = g.n_alpha / 2;
        for (int q = 0; q < g.n_alpha; ++q) {
            const int qm = (q + half) % g.n_alpha;
            for (int r = 0; r < g.n_p; ++r) {
                const double d = data.at(q, r) - data.at(qm, g.n_p - 1 - r);
                rep.symmetry_defect = std::max(rep.symmetry_defect, std::abs(d));
            }
        }
    }
    return rep;
}

}  // namespace tat
