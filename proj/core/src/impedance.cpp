#include "linerkit/impedance.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <sstream>

namespace linerkit {

namespace {

double round_to_nearest_pole(double f, double base) { return base * std::round(f / base); }

}  // namespace

double first_pole_hz(const LinerGeometry& geom, const GasParameters& gas) {
    return gas.c / (2.0 * geom.L);
}

bool in_pole_guard(double f_hz, const LinerGeometry& geom, const GasParameters& gas,
                   double guard_hz) {
    const double base = first_pole_hz(geom, gas);
    const double nearest = round_to_nearest_pole(f_hz, base);
    return nearest > 0.0 && std::abs(f_hz - nearest) < guard_hz;
}

ImpedanceSample zeta_ahm3v(Complex k_R, const LinerGeometry& geom, const GasParameters& gas,
                           double omega) {
    geom.validate();
    gas.validate();
    const double f = omega / (2.0 * kPi);
    if (in_pole_guard(f, geom, gas)) {
        std::ostringstream msg;
        msg << "zeta_ahm3v: f=" << f << " Hz lies inside the pole guard band";
        throw PoleProximityError(msg.str());
    }
    const double mod2 = std::norm(k_R);
    if (!(mod2 > 0.0)) throw NumericalError("zeta_ahm3v: k_R must be nonzero");
    const double x = omega * geom.L / gas.c;
    const double cot = std::cos(x) / std::sin(x);
    ImpedanceSample out;
    out.f = f;
    out.zeta = Complex(-omega * k_R.imag() / (gas.c * mod2),
                       omega * k_R.real() / (gas.c * mod2) - cot / geom.a_C);
    out.model = "ahm3v";
    return out;
}

ImpedanceSample zeta_guess(const LinerGeometry& geom, const GasParameters& gas, double omega,
                           const EndCorrection& corr) {
    geom.validate();
    gas.validate();
    const double f = omega / (2.0 * kPi);
    if (in_pole_guard(f, geom, gas)) {
        std::ostringstream msg;
        msg << "zeta_guess: f=" << f << " Hz lies inside the pole guard band";
        throw PoleProximityError(msg.str());
    }
    const double sigma = porosity(geom);
    const double d = geom.d_ap, h = geom.h_ap, c = gas.c;
    const double dcor = end_correction(geom, corr);
    const double visc = std::sqrt(8.0 * omega * gas.nu) / (c * sigma) * (1.0 + h / d);
    const double x = omega * geom.L / c;
    const double cot = std::cos(x) / std::sin(x);
    ImpedanceSample out;
    out.f = f;
    out.zeta = Complex(visc + omega * omega * d * d / (8.0 * c * c * sigma),
                       visc + omega * (h + dcor) / (c * sigma) - cot / geom.a_C);
    out.model = "guess";
    return out;
}

WallAdmittance admittance_from_limit_problem(Complex k_R, const LinerGeometry& geom,
                                             const GasParameters& gas, double omega) {
    geom.validate();
    gas.validate();
    const double x = omega * geom.L / gas.c;
    const double s = std::sin(x), co = std::cos(x);
    const Complex denom = gas.c * co / (omega * geom.a_C) - s / k_R;
    if (std::abs(denom) < 1e-14 * (1.0 + std::abs(s / k_R)))
        throw NumericalError(
            "admittance_from_limit_problem: boundary-operator resonance (vanishing denominator)");
    return {s / denom, omega / (2.0 * kPi)};
}

WallAdmittance admittance_from_zeta(const ImpedanceSample& zeta, const GasParameters& gas,
                                    double omega) {
    gas.validate();
    const double mod = std::abs(zeta.zeta);
    if (!(mod > 1e-12))
        throw NumericalError(
            "admittance_from_zeta: |zeta| below threshold (pressure-release wall, outside "
            "model validity)");
    return {Complex(0.0, omega / gas.c) / std::conj(zeta.zeta), omega / (2.0 * kPi)};
}

ImpedanceModel ImpedanceModel::ahm3v(std::function<Complex(double)> provider, LinerGeometry g,
                                     GasParameters gp) {
    ImpedanceModel m;
    m.kind = Kind::Ahm3v;
    m.kr_provider = std::move(provider);
    m.geom = g;
    m.gas = gp;
    m.label = "ahm3v";
    return m;
}

ImpedanceModel ImpedanceModel::guess(const EndCorrection& corr, LinerGeometry g, GasParameters gp,
                                     std::string label_suffix) {
    ImpedanceModel m;
    m.kind = Kind::Guess;
    m.end_corr = corr;
    m.geom = g;
    m.gas = gp;
    m.label = "guess-" + std::move(label_suffix);
    return m;
}

ImpedanceSample ImpedanceModel::zeta(double f_hz) const {
    const double omega = 2.0 * kPi * f_hz;
    ImpedanceSample s;
    if (kind == Kind::Ahm3v) {
        if (!kr_provider) throw ConfigError("ImpedanceModel: AHM-3v requires a k_R provider");
        s = zeta_ahm3v(kr_provider(f_hz), geom, gas, omega);
    } else {
        s = zeta_guess(geom, gas, omega, end_corr);
    }
    s.model = label;
    return s;
}

WallAdmittance ImpedanceModel::admittance(double f_hz) const {
    const double omega = 2.0 * kPi * f_hz;
    const double base = first_pole_hz(geom, gas);
    const double nearest = round_to_nearest_pole(f_hz, base);
    if (nearest > 0.0 && std::abs(f_hz - nearest) < 1e-9 * std::max(1.0, f_hz))
        return {Complex(0.0, 0.0), f_hz};  // exact pole: hard wall
    if (kind == Kind::Ahm3v) {
        if (!kr_provider) throw ConfigError("ImpedanceModel: AHM-3v requires a k_R provider");
        // regular at poles; no guard needed on this path
        return admittance_from_limit_problem(kr_provider(f_hz), geom, gas, omega);
    }
    return admittance_from_zeta(zeta(f_hz), gas, omega);
}

std::vector<double> resonance_frequencies(const ImpedanceModel& model, double f_lo, double f_hi,
                                          double tol_hz, double scan_step_hz) {
    if (!(f_lo > 0.0) || !(f_hi > f_lo))
        throw ConfigError("resonance_frequencies: range must satisfy 0 < f_lo < f_hi");
    if (!(tol_hz > 0.0)) throw ConfigError("resonance_frequencies: tol_hz must be > 0");

    const double pole_base = first_pole_hz(model.geom, model.gas);
    auto has_pole_between = [&](double a, double b) {
        const int ka = static_cast<int>(std::floor(a / pole_base));
        const int kb = static_cast<int>(std::floor(b / pole_base));
        return ka != kb;
    };
    auto im_zeta = [&](double f) { return model.zeta(f).zeta.imag(); };

    std::vector<double> roots;
    double prev_f = 0.0, prev_v = 0.0;
    bool have_prev = false;
    for (double f = f_lo; f <= f_hi + 0.5 * scan_step_hz; f += scan_step_hz) {
        const double fc = std::min(f, f_hi);
        if (in_pole_guard(fc, model.geom, model.gas)) {
            have_prev = false;
            continue;
        }
        const double v = im_zeta(fc);
        if (have_prev && prev_v * v <= 0.0 && !(prev_v == 0.0 && v == 0.0) &&
            !has_pole_between(prev_f, fc)) {
            const auto stop = [tol_hz](double a, double b) { return std::abs(b - a) <= tol_hz; };
            std::uintmax_t iters = 100;
            const auto bracket =
                boost::math::tools::toms748_solve(im_zeta, prev_f, fc, prev_v, v, stop, iters);
            roots.push_back(0.5 * (bracket.first + bracket.second));
        }
        prev_f = fc;
        prev_v = v;
        have_prev = true;
        if (fc >= f_hi) break;
    }
    return roots;
}

}  // namespace linerkit
