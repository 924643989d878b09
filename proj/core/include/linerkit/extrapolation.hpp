#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace linerkit {

struct ExtrapolationResult {
    std::complex<double> value;      // K_R extrapolated to 1/S = 0
    double relative_residual = 0.0;  // ||fit - data|| / ||data||
    bool residual_warning = false;   // residual above warning threshold
    int degree = 0;
};

/// Least-squares fit of K_R(S) = K_R_inf + a1/S + ... + am/S^m, evaluated
/// at 1/S = 0. Default degree m = min(#samples - 1, 2).
///
/// Throws on fewer than 2 samples or duplicate S values.
ExtrapolationResult extrapolate_kr(
    const std::vector<std::pair<double, std::complex<double>>>& samples, int degree = -1,
    double residual_warning_threshold = 1e-3);

}  // namespace linerkit
