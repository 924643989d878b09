#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "linerkit/types.hpp"

namespace linerkit {

/// Truncated meridian aperture domain: neck rectangle
/// {0 <= r <= d_ap/2, -h_ap <= z <= 0} joined to an upper half-disk of
/// radius S*d_ap centered at the origin and a lower half-disk of the same
/// radius centered at (0, -h_ap).
struct ApertureDomain {
    double d_ap = 1.0e-3;  // aperture diameter [m]
    double h_ap = 1.0e-3;  // plate thickness [m]
    double S = 40.0;       // truncation radius in units of d_ap

    double radius() const { return S * d_ap; }
    void validate() const;
};

enum class BoundaryTag : std::uint8_t { Wall, Axis, SpherePlus, SphereMinus };

struct MeshOptions {
    double target_h;        // near-field element size [m]
    int bl_layers = 3;      // wall layers inside the viscous thickness
    double omega;           // [rad/s]
    double nu;              // [m^2/s]; sets viscous thickness sqrt(2 nu / omega)
    double radial_growth = 1.35;
    double layer_growth = 1.3;
    double angular_growth = 1.6;
    double far_angle = 0.22;      // max angular step on an arc [rad]
    double far_fraction = 0.35;   // max radial step as fraction of radius
    double quality_floor = 1e-5;  // min accepted radius-ratio quality
};

struct MeridianMesh {
    std::vector<std::array<double, 2>> vertices;  // (r,z) [m]
    std::vector<std::array<int, 3>> triangles;    // CCW in the (r,z) plane

    struct BoundaryEdge {
        int a, b;  // oriented with the fluid on the left
        BoundaryTag tag;
    };
    std::vector<BoundaryEdge> boundary_edges;

    // grading metadata
    double bl_first_layer = 0.0;     // [m]
    double viscous_thickness = 0.0;  // [m]
    bool uniform_no_bl = false;      // set when bl_layers == 0 was requested
    double min_quality = 1.0;        // min radius-ratio over all triangles

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t triangle_count() const { return triangles.size(); }
    bool has_tag(BoundaryTag tag) const;
};

/// Graded conforming triangulation of the truncated aperture domain:
/// geometric refinement into the two reentrant rim corners, wall layers
/// resolving the viscous thickness, radial coarsening to the truncation
/// hemispheres.
MeridianMesh build_aperture_mesh(const ApertureDomain& domain, const MeshOptions& opts);

/// Closed cylindrical tube (meridian rectangle [0,radius] x [0,length]);
/// end discs carry the SphereMinus (z=0) / SpherePlus (z=length) tags so
/// the aperture pipeline runs unchanged on it. Oscillatory pipe-flow
/// benchmark domain.
MeridianMesh build_tube_mesh(double radius, double length, const MeshOptions& opts);

/// Plain-text export: vertex list, triangle list, tagged boundary edges.
void write_mesh_text(const MeridianMesh& mesh, std::ostream& out);

double triangle_quality(const std::array<double, 2>& a, const std::array<double, 2>& b,
                        const std::array<double, 2>& c);

}  // namespace linerkit
