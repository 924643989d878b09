#pragma once

#include <complex>
#include <vector>

namespace linerkit::bessel {

// Bessel functions of the first kind for complex argument, needed because
// the lined-duct radial wavenumbers are complex. Ascending series for
// |z| <= 15 and the Hankel asymptotic expansion beyond, both summed in
// long double; absolute accuracy ~1e-13 (relative to exp(|Im z|) growth).
std::complex<double> cyl_j0(std::complex<double> z);
std::complex<double> cyl_j1(std::complex<double> z);

/// First n positive zeros of J1 (equivalently of J0'), McMahon start +
/// Newton polish.
std::vector<double> j1_zeros(int n);

}  // namespace linerkit::bessel
