#pragma once

#include <Eigen/Core>
#include <array>
#include <memory>
#include <vector>

#include "linerkit/mesh.hpp"
#include "linerkit/types.hpp"

namespace linerkit {

/// Discrete solution of the truncated instationary Stokes aperture problem
///   -i omega v + (1/rho0) grad p - nu lap v = 0,  div v = 0
/// with v = 0 on walls, v_r = 0 on the axis, and the pressure data
/// p = p_plus / p_minus entering weakly through the natural boundary term
/// on the truncation hemispheres (the discrete pressure approaches the
/// data under refinement instead of matching it nodally).
///
/// Discretization: Taylor-Hood P2/P1 on the meridian triangulation with
/// the axisymmetric measure 2 pi r dr dz.
struct StokesSolution {
    std::shared_ptr<const MeridianMesh> mesh;
    std::vector<std::array<int, 2>> p2_edges;  // edge k <-> velocity node nv + k
    Eigen::VectorXcd vr, vz;                   // quadratic velocity nodes [m/s]
    Eigen::VectorXcd p;                        // linear pressure nodes [Pa]
    double omega = 0.0;
    double p_plus = 0.5, p_minus = -0.5;
    double solver_residual = 0.0;      // ||Ax-b|| / ||b|| of the full system
    double divergence_residual = 0.0;  // constraint-block residual, relative
};

StokesSolution solve_aperture(const MeridianMesh& mesh, const GasParameters& gas, double omega,
                              double p_plus = 0.5, double p_minus = -0.5);

/// Volume flux integral over the tagged surface with the axisymmetric
/// measure 2 pi r ds and the outward normal of the fluid region [m^3/s].
Complex flux_through(const StokesSolution& sol, BoundaryTag surface);

/// Single-hole effective Rayleigh conductivity sample [m]:
/// K_R(S) = (i omega rho0 / 2) (flux_plus - flux_minus) / (p_plus - p_minus).
Complex rayleigh_single_hole(const StokesSolution& sol, const GasParameters& gas);

struct EnergyFunctionals {
    double velocity_l2;  // int |v|^2 2 pi r dr dz
    double gradient_l2;  // int (|grad v_r|^2 + |grad v_z|^2 + |v_r/r|^2) 2 pi r dr dz
};
EnergyFunctionals solution_energy(const StokesSolution& sol);

/// Evaluate velocity at a point; locates the containing triangle by scan.
/// Intended for oracles/diagnostics rather than hot loops.
std::array<Complex, 2> evaluate_velocity(const StokesSolution& sol, double r, double z);

}  // namespace linerkit
