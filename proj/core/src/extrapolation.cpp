#include "linerkit/extrapolation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "linerkit/types.hpp"

namespace linerkit {

ExtrapolationResult extrapolate_kr(
    const std::vector<std::pair<double, std::complex<double>>>& samples, int degree,
    double residual_warning_threshold) {
    const int n = static_cast<int>(samples.size());
    if (n < 2) throw NumericalError("extrapolate_kr: need at least 2 samples");
    for (int i = 0; i < n; ++i) {
        if (!(samples[i].first > 0.0))
            throw NumericalError("extrapolate_kr: truncation radii must be > 0");
        for (int j = i + 1; j < n; ++j)
            if (samples[i].first == samples[j].first)
                throw NumericalError("extrapolate_kr: duplicate S values");
    }

    int m = (degree < 0) ? std::min(n - 1, 2) : std::min(degree, n - 1);

    Eigen::MatrixXd A(n, m + 1);
    Eigen::VectorXd br(n), bi(n);
    for (int i = 0; i < n; ++i) {
        const double x = 1.0 / samples[i].first;
        double p = 1.0;
        for (int j = 0; j <= m; ++j) {
            A(i, j) = p;
            p *= x;
        }
        br(i) = samples[i].second.real();
        bi(i) = samples[i].second.imag();
    }

    const auto qr = A.colPivHouseholderQr();
    const Eigen::VectorXd cr = qr.solve(br);
    const Eigen::VectorXd ci = qr.solve(bi);

    const double res2 = (A * cr - br).squaredNorm() + (A * ci - bi).squaredNorm();
    const double data2 = br.squaredNorm() + bi.squaredNorm();

    ExtrapolationResult out;
    out.value = {cr(0), ci(0)};
    out.degree = m;
    out.relative_residual = (data2 > 0.0) ? std::sqrt(res2 / data2) : std::sqrt(res2);
    out.residual_warning = out.relative_residual > residual_warning_threshold;
    return out;
}

}  // namespace linerkit
