#include "linerkit/bessel.hpp"

#include <cmath>
#include <stdexcept>

#include "linerkit/types.hpp"

namespace linerkit::bessel {

namespace {

using CLD = std::complex<long double>;

constexpr long double kPiL = 3.14159265358979323846264338327950288L;
constexpr double kSeriesRadius = 15.0;

// J_nu(z) = (z/2)^nu sum_k (-1)^k (z^2/4)^k / (k! (k+nu)!), nu in {0,1}
CLD series_j(int nu, CLD z) {
    const CLD q = z * z * 0.25L;
    CLD term = 1.0L;
    if (nu == 1) term = z * 0.5L;
    CLD sum = term;
    for (int k = 1; k < 80; ++k) {
        term *= -q / static_cast<long double>(k) / static_cast<long double>(k + nu);
        sum += term;
        if (std::abs(term) < 1e-24L * (std::abs(sum) + 1e-30L) && k > 4) break;
    }
    return sum;
}

// Hankel expansion, DLMF 10.17.3:
// J_nu(z) ~ sqrt(2/(pi z)) [cos(w) P(z) - sin(w) Q(z)], w = z - nu pi/2 - pi/4
// with a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k).
CLD asymptotic_j(int nu, CLD z) {
    const long double mu = 4.0L * nu * nu;
    CLD P = 1.0L, Q = 0.0L;
    CLD ak = 1.0L;
    CLD zpow = 1.0L;
    long double prev = 1e300L;
    for (int k = 1; k < 30; ++k) {
        const long double odd = 2.0L * k - 1.0L;
        ak *= (mu - odd * odd) / (8.0L * k);
        zpow /= z;
        const CLD term = ak * zpow;
        const long double mag = std::abs(term);
        if (mag > prev) break;  // past the optimal truncation point
        prev = mag;
        const int r = k % 4;
        if (r == 0) P += term;
        else if (r == 1) Q += term;
        else if (r == 2) P -= term;
        else Q -= term;
        if (mag < 1e-20L) break;
    }
    const CLD w = z - (nu * 0.5L + 0.25L) * kPiL;
    return std::sqrt(2.0L / (kPiL * z)) * (std::cos(w) * P - std::sin(w) * Q);
}

std::complex<double> eval_j(int nu, std::complex<double> zin) {
    CLD z(zin.real(), zin.imag());
    // J0 even, J1 odd: reflect to Re z >= 0 so the asymptotic branch
    // (valid for |arg z| < pi) is always usable.
    long double sign = 1.0L;
    if (z.real() < 0.0L) {
        z = -z;
        if (nu == 1) sign = -1.0L;
    }
    const CLD v = (std::abs(z) <= kSeriesRadius) ? series_j(nu, z) : asymptotic_j(nu, z);
    const CLD r = sign * v;
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

}  // namespace

std::complex<double> cyl_j0(std::complex<double> z) { return eval_j(0, z); }

std::complex<double> cyl_j1(std::complex<double> z) { return eval_j(1, z); }

std::vector<double> j1_zeros(int n) {
    if (n < 0) throw std::invalid_argument("j1_zeros: n must be >= 0");
    std::vector<double> zeros;
    zeros.reserve(n);
    for (int k = 1; k <= n; ++k) {
        // McMahon expansion for zeros of J1: b = (k + 1/4) pi
        const double b = (k + 0.25) * kPi;
        double x = b - 3.0 / (8.0 * b) + 12.0 / std::pow(8.0 * b, 3);
        for (int it = 0; it < 30; ++it) {
            const double j1 = cyl_j1(x).real();
            const double j1p = cyl_j0(x).real() - j1 / x;  // J1' = J0 - J1/x
            const double step = j1 / j1p;
            x -= step;
            if (std::abs(step) < 1e-15 * x) break;
        }
        zeros.push_back(x);
    }
    return zeros;
}

}  // namespace linerkit::bessel
