#pragma once

#include <functional>
#include <string>
#include <vector>

#include "linerkit/types.hpp"

namespace linerkit {

/// Normalized specific acoustic impedance sample. The definition carries
/// a complex conjugate and a sign relative to the textbook one:
/// zeta = -conj(p) / (c rho0 conj(v).n). Resistance Re(zeta) >= 0 for
/// physical inputs; reactance Im(zeta) has poles at multiples of c/(2L).
struct ImpedanceSample {
    double f = 0.0;
    Complex zeta;
    std::string model;
};

/// Robin coefficient of the homogenized wall condition
/// grad p . n = beta p (outward normal into the liner) [1/m].
struct WallAdmittance {
    Complex beta;
    double f = 0.0;
};

inline constexpr double kPoleGuardHz = 0.5;

/// Frequency of the first chamber pole, c/(2L).
double first_pole_hz(const LinerGeometry& geom, const GasParameters& gas);

/// True when f lies within the guard band of a pole of cot(omega L / c).
bool in_pole_guard(double f_hz, const LinerGeometry& geom, const GasParameters& gas,
                   double guard_hz = kPoleGuardHz);

/// zeta_AHM-3v = -omega Im(k_R)/(c|k_R|^2)
///               + i ( omega Re(k_R)/(c|k_R|^2) - cot(omega L/c)/a_C ).
ImpedanceSample zeta_ahm3v(Complex k_R, const LinerGeometry& geom, const GasParameters& gas,
                           double omega);

/// Guess's semi-analytic model,
/// zeta = (1+i) sqrt(8 omega nu)/(c sigma) (1 + h/d)
///        + i omega (h + d_cor)/(c sigma) + omega^2 d^2/(8 c^2 sigma)
///        - i cot(omega L/c)/a_C,
/// with the chamber-wall correction factor fixed so the chamber reactance
/// coefficient matches the homogenized model (1 - eps = a_C).
ImpedanceSample zeta_guess(const LinerGeometry& geom, const GasParameters& gas, double omega,
                           const EndCorrection& corr);

/// beta = sin(omega L/c) / ( c cos(omega L/c)/(omega a_C) - sin(omega L/c)/k_R ).
/// Regular at chamber poles (beta -> 0, hard wall).
WallAdmittance admittance_from_limit_problem(Complex k_R, const LinerGeometry& geom,
                                             const GasParameters& gas, double omega);

/// beta = i (omega/c) / conj(zeta). For AHM-3v inputs this agrees with
/// admittance_from_limit_problem to round-off; the conjugation convention
/// lives here and in the formula above only.
WallAdmittance admittance_from_zeta(const ImpedanceSample& zeta, const GasParameters& gas,
                                    double omega);

/// Impedance model selector: AHM-3v driven by a k_R provider (cache or
/// solver), or Guess with a chosen end-correction.
struct ImpedanceModel {
    enum class Kind { Ahm3v, Guess };
    Kind kind = Kind::Guess;
    EndCorrection end_corr = EndCorrection::morse();
    std::function<Complex(double f_hz)> kr_provider;  // required for Ahm3v
    LinerGeometry geom;
    GasParameters gas;
    std::string label;  // CSV model tag

    static ImpedanceModel ahm3v(std::function<Complex(double)> provider, LinerGeometry g,
                                GasParameters gp);
    static ImpedanceModel guess(const EndCorrection& corr, LinerGeometry g, GasParameters gp,
                                std::string label_suffix);

    ImpedanceSample zeta(double f_hz) const;  // throws PoleProximityError in guard bands

    /// Wall admittance for the duct solver; exact chamber poles map to
    /// beta = 0 (hard wall), guard-band frequencies otherwise throw.
    WallAdmittance admittance(double f_hz) const;
};

/// Zeros of Im(zeta): scan on a uniform grid, exclude brackets containing
/// chamber poles, refine each sign change by TOMS-748 bracketing to
/// tol_hz.
std::vector<double> resonance_frequencies(const ImpedanceModel& model, double f_lo, double f_hi,
                                          double tol_hz = 0.01, double scan_step_hz = 1.0);

}  // namespace linerkit
