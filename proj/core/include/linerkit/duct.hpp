#pragma once

#include <string>
#include <vector>

#include "linerkit/config.hpp"
#include "linerkit/impedance.hpp"
#include "linerkit/types.hpp"

namespace linerkit {

/// Axisymmetric (m=0) radial eigenmodes of a circular duct segment.
/// Profiles J0(alpha r); axial wavenumbers mu with mu^2 = (omega/c)^2 -
/// alpha^2 and the branch Im(mu) >= 0 so e^{+i mu z} is right-going /
/// decaying under e^{-i omega t}.
struct RadialModeSet {
    enum class WallKind { Hard, Lined };
    WallKind wall = WallKind::Hard;
    Complex beta{0.0, 0.0};
    std::vector<Complex> alpha;  // radial wavenumbers [1/m]
    std::vector<Complex> mu;     // axial wavenumbers [1/m]
    std::vector<Complex> norm;   // bilinear norms int J0(a r)^2 2 pi r dr [m^2]
};

/// Hard wall: alpha_0 = 0 (plane wave), alpha_n = j'_{0,n}/R_d.
RadialModeSet hard_modes(double R_d, double omega, double c, int N);

/// Lined wall: N roots of -alpha J1(alpha R_d) = beta J0(alpha R_d),
/// Newton-continued in beta from the hard-wall spectrum.
RadialModeSet lined_modes(double R_d, double omega, double c, Complex beta, int N,
                          int homotopy_steps = 12);

struct ScatteringResult {
    std::vector<Complex> r, t;  // modal amplitudes in the hard-wall basis
    double T = 0.0;             // transmitted energy fraction
    double R = 0.0;             // reflected energy fraction
    double D = 0.0;             // dissipation, 1 - T - R
    double condition_estimate = 0.0;
};

/// Plane-wave scattering by the lined segment (hard | lined | hard) via
/// mode matching: pressure and axial velocity continuity at both
/// interfaces projected onto the hard-wall basis. Incident field
/// exp(i omega z / c) from the left.
ScatteringResult mode_match(const DuctGeometry& duct, double omega, double c, Complex beta);

/// Same scattering problem assembled with the incident wave from the
/// right (used to verify the geometric symmetry of the lined segment).
ScatteringResult mode_match_from_right(const DuctGeometry& duct, double omega, double c,
                                       Complex beta);

struct SweepRow {
    double f = 0.0;
    double T = 0.0, R = 0.0, D = 0.0;
    bool ok = false;
    std::string note;  // "pole" for analytic insertions, error text on failure
};

/// Per-frequency scattering over f_grid. Rows inside pole guard bands are
/// punctured; exact pole frequencies get the analytic hard-wall result
/// (T=1, D=0); failures mark the row instead of aborting the sweep.
std::vector<SweepRow> dissipation_sweep(const DuctGeometry& duct, const ImpedanceModel& model,
                                        const std::vector<double>& f_grid);

struct DissipationExtremum {
    double f = 0.0;
    double D = 0.0;
    bool is_max = true;
};

/// Local extrema of D(f) by discrete comparison with parabolic refinement.
std::vector<DissipationExtremum> find_dissipation_extrema(const std::vector<SweepRow>& curve);

}  // namespace linerkit
