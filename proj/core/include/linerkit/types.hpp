#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Conventions used throughout the library:
//  - SI units internally (m, s, kg, Pa). Config files accept mm with
//    explicit unit keys; conversion happens at the parsing boundary.
//  - Time-harmonic fields follow exp(-i*omega*t). Every complex sign in
//    the library (Im k_R < 0, Re zeta > 0, decaying modes with
//    Im mu >= 0) depends on this choice; it is fixed here, never a
//    per-call option.
namespace linerkit {

inline constexpr double kPi = 3.14159265358979323846;

// field(x,t) = Re( field(x) * exp(kTimeSign * i * omega * t) )
inline constexpr double kTimeSign = -1.0;

using Complex = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class MeshError : public Error {
public:
    using Error::Error;
};

// Evaluation requested inside the guard band around a chamber pole
// frequency (multiples of c/2L).
class PoleProximityError : public Error {
public:
    using Error::Error;
};

/// Quiescent gas. Defaults are air at 288.15 K, 101.325 kPa.
struct GasParameters {
    double rho0 = 1.2252;    // mass density [kg/m^3]
    double c = 340.45;       // sound speed [m/s]
    double nu = 14.66e-6;    // kinematic viscosity [m^2/s]

    void validate() const;
};

/// Perforated plate / resonator array geometry. Defaults are the liner
/// DC006* with a 100 mm chamber.
struct LinerGeometry {
    double delta = 8.5e-3;   // inter-hole period [m]
    double d_ap = 1.0e-3;    // aperture diameter [m]
    double h_ap = 1.0e-3;    // aperture (plate) height [m]
    double a_C = 0.9;        // chamber cross-section area fraction
    double L = 0.1;          // chamber depth [m]

    void validate() const;

    LinerGeometry with_depth(double depth) const {
        LinerGeometry g = *this;
        g.L = depth;
        return g;
    }
};

struct Frequency {
    double f = 0.0;      // [Hz]
    double omega = 0.0;  // [rad/s], omega = 2*pi*f

    static Frequency from_hz(double f_hz);
    static Frequency from_omega(double omega_rad);
};

/// Open-area fraction sigma = pi d^2 / (4 delta^2).
double porosity(const LinerGeometry& geom);

struct EndCorrection {
    enum class Kind { Morse, IngardTwoTerm, UserValue };
    Kind kind = Kind::Morse;
    double user_value = 0.0;  // [m], only for UserValue

    static EndCorrection morse() { return {Kind::Morse, 0.0}; }
    static EndCorrection ingard_two_term() { return {Kind::IngardTwoTerm, 0.0}; }
    static EndCorrection user(double value_m) { return {Kind::UserValue, value_m}; }
};

/// Effective added neck length delta_cor [m].
/// Morse: 8 d / (3 pi).
/// Ingard two-term: 8 d / (3 pi) * (1 - 1.25 sqrt(sigma/pi) (1 + 1/sqrt(a_C))).
/// Ingard's original series value (0.709 mm for DC006*) is not
/// reproducible from a closed form; pass it as UserValue.
double end_correction(const LinerGeometry& geom, const EndCorrection& kind);

/// Chamber reactance poles k*c/(2L), k >= 1, strictly below f_max.
std::vector<double> pole_frequencies(const LinerGeometry& geom, const GasParameters& gas,
                                     double f_max);

/// k_R = K_R / delta^2: single-hole conductivity [m] to effective
/// conductivity of the array [1/m].
Complex effective_from_single_hole(Complex K_R, const LinerGeometry& geom);

}  // namespace linerkit
