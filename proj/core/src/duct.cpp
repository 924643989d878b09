#include "linerkit/duct.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "linerkit/bessel.hpp"

namespace linerkit {

namespace {

using bessel::cyl_j0;
using bessel::cyl_j1;

Complex axial_wavenumber(Complex alpha, double k) {
    Complex mu = std::sqrt(Complex(k * k, 0.0) - alpha * alpha);
    if (mu.imag() < 0.0) mu = -mu;
    if (mu.imag() == 0.0 && mu.real() < 0.0) mu = -mu;
    return mu;
}

Complex mode_norm(Complex alpha, double R) {
    // int_0^R J0(a r)^2 2 pi r dr = pi R^2 (J0(aR)^2 + J1(aR)^2), bilinear
    const Complex j0 = cyl_j0(alpha * R);
    const Complex j1 = cyl_j1(alpha * R);
    return kPi * R * R * (j0 * j0 + j1 * j1);
}

// Lommel: C_mn = int_0^R J0(a r) J0(b r) 2 pi r dr for a != b
Complex cross_integral(Complex a, Complex b, double R) {
    const Complex da = a * a - b * b;
    if (std::abs(da) < 1e-9 * (std::norm(a) + std::norm(b) + 1.0)) return mode_norm(a, R);
    const Complex num =
        a * cyl_j1(a * R) * cyl_j0(b * R) - b * cyl_j0(a * R) * cyl_j1(b * R);
    return 2.0 * kPi * R * num / (b * b - a * a);
}

// F(alpha) = alpha J1(alpha R) + beta J0(alpha R) (= 0 is the lined-wall
// dispersion relation); F'(alpha) = R (alpha J0(alpha R) - beta J1(alpha R))
Complex dispersion(Complex alpha, Complex beta, double R) {
    return alpha * cyl_j1(alpha * R) + beta * cyl_j0(alpha * R);
}
Complex dispersion_deriv(Complex alpha, Complex beta, double R) {
    return R * (alpha * cyl_j0(alpha * R) - beta * cyl_j1(alpha * R));
}

Complex newton_root(Complex start, Complex beta, double R, const char* what) {
    Complex a = start;
    for (int it = 0; it < 60; ++it) {
        const Complex F = dispersion(a, beta, R);
        const Complex dF = dispersion_deriv(a, beta, R);
        if (std::abs(dF) == 0.0) break;
        const Complex step = F / dF;
        a -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(a))) {
            if (a.real() < 0.0 || (a.real() == 0.0 && a.imag() < 0.0)) a = -a;
            return a;
        }
    }
    std::ostringstream msg;
    msg << "lined_modes: Newton iteration failed to converge (" << what << ")";
    throw NumericalError(msg.str());
}

}  // namespace

RadialModeSet hard_modes(double R_d, double omega, double c, int N) {
    if (N < 1) throw ConfigError("hard_modes: N must be >= 1");
    if (!(R_d > 0.0 && omega > 0.0 && c > 0.0))
        throw ConfigError("hard_modes: R_d, omega, c must be > 0");
    const double k = omega / c;
    RadialModeSet set;
    set.wall = RadialModeSet::WallKind::Hard;
    set.alpha.push_back(0.0);
    const auto zeros = bessel::j1_zeros(N - 1);
    for (double z : zeros) set.alpha.emplace_back(z / R_d, 0.0);
    for (const Complex& a : set.alpha) {
        set.mu.push_back(axial_wavenumber(a, k));
        set.norm.push_back(mode_norm(a, R_d));
    }
    return set;
}

RadialModeSet lined_modes(double R_d, double omega, double c, Complex beta, int N,
                          int homotopy_steps) {
    if (!(std::isfinite(beta.real()) && std::isfinite(beta.imag())))
        throw NumericalError("lined_modes: beta must be finite");
    RadialModeSet hard = hard_modes(R_d, omega, c, N);
    if (std::abs(beta) * R_d < 1e-12) return hard;

    // continuation in beta from the hard-wall spectrum; the step size
    // adapts downward when Newton diverges or two roots coalesce (large
    // |beta| pushes the spectrum toward the pressure-release limit)
    const double ds_max = 1.0 / std::max(homotopy_steps, 8);
    const double k = omega / c;
    std::vector<Complex> alpha = hard.alpha;
    double s = 0.0, ds = ds_max;
    while (s < 1.0) {
        ds = std::min(ds, 1.0 - s);
        const Complex b = beta * (s + ds);
        std::vector<Complex> next(N);
        bool ok = true;
        for (int n = 0; n < N && ok; ++n) {
            Complex start = alpha[n];
            if (n == 0 && s == 0.0) start = std::sqrt(-2.0 * b / R_d);  // small-beta expansion
            try {
                next[n] = newton_root(start, b, R_d, "continuation step");
            } catch (const NumericalError&) {
                ok = false;
            }
        }
        for (int i = 0; i < N && ok; ++i)
            for (int j = i + 1; j < N && ok; ++j)
                if (std::abs(next[i] * next[i] - next[j] * next[j]) <
                    1e-8 * (std::norm(next[j]) + 1.0))
                    ok = false;
        if (!ok) {
            ds *= 0.5;
            if (ds < 1e-6) {
                std::ostringstream msg;
                msg << "lined_modes: continuation stalled at s=" << s << " (beta=" << beta.real()
                    << "+" << beta.imag() << "i)";
                throw NumericalError(msg.str());
            }
            continue;
        }
        alpha = std::move(next);
        s += ds;
        ds = std::min(ds * 1.5, ds_max);
    }

    RadialModeSet set;
    set.wall = RadialModeSet::WallKind::Lined;
    set.beta = beta;
    set.alpha = alpha;
    for (const Complex& a : alpha) {
        set.mu.push_back(axial_wavenumber(a, k));
        set.norm.push_back(mode_norm(a, R_d));
    }
    return set;
}

namespace {

ScatteringResult match_impl(const DuctGeometry& duct, double omega, double c, Complex beta) {
    const int N = duct.N_modes;
    if (std::abs(beta) * duct.R_d < 1e-12) {
        // hard wall everywhere: the incident wave passes unchanged
        ScatteringResult res;
        res.r.assign(N, 0.0);
        res.t.assign(N, 0.0);
        res.t[0] = 1.0;
        res.T = 1.0;
        res.R = 0.0;
        res.D = 0.0;
        res.condition_estimate = 1.0;
        return res;
    }

    const RadialModeSet hard = hard_modes(duct.R_d, omega, c, N);
    const RadialModeSet lined = lined_modes(duct.R_d, omega, c, beta, N);

    // cross-projection matrix C_mn = <hard_m, lined_n>
    Eigen::MatrixXcd C(N, N);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            C(m, n) = cross_integral(hard.alpha[m], lined.alpha[n], duct.R_d);

    std::vector<Complex> E(N);
    for (int n = 0; n < N; ++n) E[n] = std::exp(Complex(0, 1) * lined.mu[n] * duct.Z_len);

    // unknowns [r(0:N) | a(N:2N) | b(2N:3N) | t(3N:4N)]; region II field
    // sum_n (a_n e^{i mu z} + b_n e^{-i mu (z - Z)}) J0(alpha_n r)
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(4 * N, 4 * N);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(4 * N);
    const Complex i1(0, 1);
    for (int m = 0; m < N; ++m) {
        // pressure continuity, z=0
        A(m, m) = hard.norm[m];
        for (int n = 0; n < N; ++n) {
            A(m, N + n) -= C(m, n);
            A(m, 2 * N + n) -= C(m, n) * E[n];
        }
        if (m == 0) rhs(m) = -hard.norm[0];
        // velocity continuity, z=0
        const int rv = N + m;
        A(rv, m) = -i1 * hard.mu[m] * hard.norm[m];
        for (int n = 0; n < N; ++n) {
            A(rv, N + n) -= i1 * lined.mu[n] * C(m, n);
            A(rv, 2 * N + n) += i1 * lined.mu[n] * C(m, n) * E[n];
        }
        if (m == 0) rhs(rv) = -i1 * hard.mu[0] * hard.norm[0];
        // pressure continuity, z=Z
        const int rp = 2 * N + m;
        for (int n = 0; n < N; ++n) {
            A(rp, N + n) += C(m, n) * E[n];
            A(rp, 2 * N + n) += C(m, n);
        }
        A(rp, 3 * N + m) = -hard.norm[m];
        // velocity continuity, z=Z
        const int rz = 3 * N + m;
        for (int n = 0; n < N; ++n) {
            A(rz, N + n) += i1 * lined.mu[n] * C(m, n) * E[n];
            A(rz, 2 * N + n) -= i1 * lined.mu[n] * C(m, n);
        }
        A(rz, 3 * N + m) = -i1 * hard.mu[m] * hard.norm[m];
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-10)) {
        std::ostringstream msg;
        msg << "mode_match: matching system condition estimate " << 1.0 / std::max(rcond, 1e-300)
            << " exceeds 1e10; try a different N or shift the frequency";
        throw NumericalError(msg.str());
    }
    const Eigen::VectorXcd x = lu.solve(rhs);

    ScatteringResult res;
    res.condition_estimate = 1.0 / rcond;
    res.r.resize(N);
    res.t.resize(N);
    for (int n = 0; n < N; ++n) {
        res.r[n] = x(n);
        res.t[n] = x(3 * N + n);
    }
    // energy split over propagating hard-wall modes
    const double mu0 = hard.mu[0].real();
    const double norm0 = hard.norm[0].real();
    for (int n = 0; n < N; ++n) {
        if (std::abs(hard.mu[n].imag()) > 1e-12 || hard.mu[n].real() <= 0.0) continue;
        const double w = hard.mu[n].real() * hard.norm[n].real() / (mu0 * norm0);
        res.T += std::norm(res.t[n]) * w;
        res.R += std::norm(res.r[n]) * w;
    }
    res.D = 1.0 - res.T - res.R;
    return res;
}

}  // namespace

ScatteringResult mode_match(const DuctGeometry& duct, double omega, double c, Complex beta) {
    duct.validate();
    if (!(omega > 0.0 && c > 0.0)) throw ConfigError("mode_match: omega, c must be > 0");
    return match_impl(duct, omega, c, beta);
}

ScatteringResult mode_match_from_right(const DuctGeometry& duct, double omega, double c,
                                       Complex beta) {
    duct.validate();
    if (!(omega > 0.0 && c > 0.0)) throw ConfigError("mode_match: omega, c must be > 0");
    const int N = duct.N_modes;
    if (std::abs(beta) * duct.R_d < 1e-12) {
        ScatteringResult res;
        res.r.assign(N, 0.0);
        res.t.assign(N, 0.0);
        res.t[0] = 1.0;
        res.T = 1.0;
        res.D = 0.0;
        res.condition_estimate = 1.0;
        return res;
    }

    const RadialModeSet hard = hard_modes(duct.R_d, omega, c, N);
    const RadialModeSet lined = lined_modes(duct.R_d, omega, c, beta, N);
    Eigen::MatrixXcd C(N, N);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            C(m, n) = cross_integral(hard.alpha[m], lined.alpha[n], duct.R_d);
    std::vector<Complex> E(N);
    for (int n = 0; n < N; ++n) E[n] = std::exp(Complex(0, 1) * lined.mu[n] * duct.Z_len);

    // incident exp(-i omega (z - Z)/c) from the right; reflected modes in
    // region III move +z, transmitted modes in region I move -z
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(4 * N, 4 * N);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(4 * N);
    const Complex i1(0, 1);
    for (int m = 0; m < N; ++m) {
        // pressure, z=Z: delta_m0 + r_m = II
        A(m, m) = hard.norm[m];
        for (int n = 0; n < N; ++n) {
            A(m, N + n) -= C(m, n) * E[n];
            A(m, 2 * N + n) -= C(m, n);
        }
        if (m == 0) rhs(m) = -hard.norm[0];
        // velocity, z=Z: d/dz of (e^{-i mu (z-Z)} + r e^{+i mu (z-Z)})
        const int rv = N + m;
        A(rv, m) = i1 * hard.mu[m] * hard.norm[m];
        for (int n = 0; n < N; ++n) {
            A(rv, N + n) -= i1 * lined.mu[n] * C(m, n) * E[n];
            A(rv, 2 * N + n) += i1 * lined.mu[n] * C(m, n);
        }
        if (m == 0) rhs(rv) = i1 * hard.mu[0] * hard.norm[0];
        // pressure, z=0: II = t_m e^{-i mu_m (0)} basis moving -z
        const int rp = 2 * N + m;
        for (int n = 0; n < N; ++n) {
            A(rp, N + n) += C(m, n);
            A(rp, 2 * N + n) += C(m, n) * E[n];
        }
        A(rp, 3 * N + m) = -hard.norm[m];
        // velocity, z=0
        const int rz = 3 * N + m;
        for (int n = 0; n < N; ++n) {
            A(rz, N + n) += i1 * lined.mu[n] * C(m, n);
            A(rz, 2 * N + n) -= i1 * lined.mu[n] * C(m, n) * E[n];
        }
        A(rz, 3 * N + m) = i1 * hard.mu[m] * hard.norm[m];
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-10)) throw NumericalError("mode_match_from_right: ill-conditioned system");
    const Eigen::VectorXcd x = lu.solve(rhs);

    ScatteringResult res;
    res.condition_estimate = 1.0 / rcond;
    res.r.resize(N);
    res.t.resize(N);
    for (int n = 0; n < N; ++n) {
        res.r[n] = x(n);
        res.t[n] = x(3 * N + n);
    }
    const double mu0 = hard.mu[0].real();
    const double norm0 = hard.norm[0].real();
    for (int n = 0; n < N; ++n) {
        if (std::abs(hard.mu[n].imag()) > 1e-12 || hard.mu[n].real() <= 0.0) continue;
        const double w = hard.mu[n].real() * hard.norm[n].real() / (mu0 * norm0);
        res.T += std::norm(res.t[n]) * w;
        res.R += std::norm(res.r[n]) * w;
    }
    res.D = 1.0 - res.T - res.R;
    return res;
}

std::vector<SweepRow> dissipation_sweep(const DuctGeometry& duct, const ImpedanceModel& model,
                                        const std::vector<double>& f_grid) {
    duct.validate();
    std::vector<SweepRow> rows;
    rows.reserve(f_grid.size());
    const double pole_base = first_pole_hz(model.geom, model.gas);
    for (double f : f_grid) {
        SweepRow row;
        row.f = f;
        const double nearest = pole_base * std::round(f / pole_base);
        if (nearest > 0.0 && std::abs(f - nearest) < 1e-9 * std::max(1.0, f)) {
            row.T = 1.0;
            row.R = 0.0;
            row.D = 0.0;
            row.ok = true;
            row.note = "pole";
            rows.push_back(row);
            continue;
        }
        if (in_pole_guard(f, model.geom, model.gas)) continue;  // punctured
        try {
            const WallAdmittance beta = model.admittance(f);
            const ScatteringResult res =
                mode_match(duct, 2.0 * kPi * f, model.gas.c, beta.beta);
            row.T = res.T;
            row.R = res.R;
            row.D = res.D;
            row.ok = true;
        } catch (const Error& e) {
            row.ok = false;
            row.note = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<DissipationExtremum> find_dissipation_extrema(const std::vector<SweepRow>& curve) {
    std::vector<const SweepRow*> ok;
    for (const auto& r : curve)
        if (r.ok) ok.push_back(&r);
    std::vector<DissipationExtremum> out;
    for (std::size_t i = 1; i + 1 < ok.size(); ++i) {
        const double d0 = ok[i - 1]->D, d1 = ok[i]->D, d2 = ok[i + 1]->D;
        const bool is_max = d1 > d0 && d1 >= d2;
        const bool is_min = d1 < d0 && d1 <= d2;
        if (!is_max && !is_min) continue;
        // parabolic refinement on (f, D)
        const double f0 = ok[i - 1]->f, f1 = ok[i]->f, f2 = ok[i + 1]->f;
        double fr = f1, Dr = d1;
        const double denom = (f1 - f0) * (d1 - d2) - (f1 - f2) * (d1 - d0);
        if (std::abs(denom) > 1e-300) {
            const double num =
                (f1 - f0) * (f1 - f0) * (d1 - d2) - (f1 - f2) * (f1 - f2) * (d1 - d0);
            fr = f1 - 0.5 * num / denom;
            if (!(fr > std::min(f0, f2) && fr < std::max(f0, f2))) fr = f1;
        }
        out.push_back({fr, Dr, is_max});
    }
    return out;
}

}  // namespace linerkit
