#include "linerkit/types.hpp"

#include <cmath>

namespace linerkit {

void GasParameters::validate() const {
    if (!(rho0 > 0.0)) throw ConfigError("GasParameters: rho0 must be > 0");
    if (!(c > 0.0)) throw ConfigError("GasParameters: c must be > 0");
    if (!(nu > 0.0)) throw ConfigError("GasParameters: nu must be > 0");
}

void LinerGeometry::validate() const {
    if (!(d_ap > 0.0)) throw ConfigError("LinerGeometry: d_ap must be > 0");
    if (!(h_ap > 0.0)) throw ConfigError("LinerGeometry: h_ap must be > 0");
    if (!(L > 0.0)) throw ConfigError("LinerGeometry: L must be > 0");
    if (!(delta > 0.0)) throw ConfigError("LinerGeometry: delta must be > 0");
    if (!(a_C > 0.0 && a_C < 1.0))
        throw ConfigError("LinerGeometry: a_C must lie strictly in (0,1)");
    if (!(kPi * d_ap * d_ap / 4.0 < a_C * delta * delta))
        throw ConfigError("LinerGeometry: aperture does not fit inside the chamber cross-section");
}

Frequency Frequency::from_hz(double f_hz) {
    if (!(f_hz > 0.0)) throw ConfigError("Frequency: f must be > 0");
    return {f_hz, 2.0 * kPi * f_hz};
}

Frequency Frequency::from_omega(double omega_rad) {
    if (!(omega_rad > 0.0)) throw ConfigError("Frequency: omega must be > 0");
    return {omega_rad / (2.0 * kPi), omega_rad};
}

double porosity(const LinerGeometry& geom) {
    geom.validate();
    return kPi * geom.d_ap * geom.d_ap / (4.0 * geom.delta * geom.delta);
}

double end_correction(const LinerGeometry& geom, const EndCorrection& kind) {
    geom.validate();
    const double morse = 8.0 * geom.d_ap / (3.0 * kPi);
    switch (kind.kind) {
        case EndCorrection::Kind::Morse:
            return morse;
        case EndCorrection::Kind::IngardTwoTerm: {
            const double sigma = porosity(geom);
            const double corr =
                morse * (1.0 - 1.25 * std::sqrt(sigma / kPi) * (1.0 + 1.0 / std::sqrt(geom.a_C)));
            if (!(corr > 0.0))
                throw NumericalError(
                    "end_correction: Ingard two-term value is non-positive; "
                    "parameters outside model validity");
            return corr;
        }
        case EndCorrection::Kind::UserValue:
            if (!(kind.user_value > 0.0))
                throw ConfigError("end_correction: user value must be > 0");
            return kind.user_value;
    }
    throw ConfigError("end_correction: unknown kind");
}

std::vector<double> pole_frequencies(const LinerGeometry& geom, const GasParameters& gas,
                                     double f_max) {
    geom.validate();
    gas.validate();
    if (!(f_max > 0.0)) throw ConfigError("pole_frequencies: f_max must be > 0");
    const double base = gas.c / (2.0 * geom.L);
    std::vector<double> poles;
    for (int k = 1; k * base < f_max; ++k) poles.push_back(k * base);
    return poles;
}

Complex effective_from_single_hole(Complex K_R, const LinerGeometry& geom) {
    geom.validate();
    if (!std::isfinite(K_R.real()) || !std::isfinite(K_R.imag()))
        throw NumericalError("effective_from_single_hole: K_R is not finite");
    return K_R / (geom.delta * geom.delta);
}

}  // namespace linerkit
