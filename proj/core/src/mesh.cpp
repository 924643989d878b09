#include "linerkit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <ostream>
#include <set>

namespace linerkit {

namespace {

struct P2d {
    double r, z;
};

double dist(const P2d& a, const P2d& b) { return std::hypot(a.r - b.r, a.z - b.z); }

double signed_area(const P2d& a, const P2d& b, const P2d& c) {
    return 0.5 * ((b.r - a.r) * (c.z - a.z) - (c.r - a.r) * (b.z - a.z));
}

// aspect penalty: longest edge squared over area; ~4.6 for equilateral
double badness(const P2d& a, const P2d& b, const P2d& c) {
    const double area = signed_area(a, b, c);
    if (!(area > 0.0)) return 1e30;
    const double e = std::max({dist(a, b), dist(b, c), dist(c, a)});
    return e * e / area;
}

// Conforming triangulation of the band between two polylines that share
// their rail endpoints. Dynamic program over the (i,j) ladder minimizing
// the total aspect penalty; node counts on the two sides may differ.
void strip_triangulate(const std::vector<P2d>& pts, const std::vector<int>& inner,
                       const std::vector<int>& outer, std::vector<std::array<int, 3>>& tris) {
    const int n = static_cast<int>(inner.size());
    const int m = static_cast<int>(outer.size());
    if (n < 1 || m < 1 || n + m < 3) throw MeshError("strip_triangulate: degenerate band");

    std::vector<double> cost(static_cast<std::size_t>(n) * m,
                             std::numeric_limits<double>::infinity());
    std::vector<std::int8_t> from(static_cast<std::size_t>(n) * m, -1);  // 0: i-step, 1: j-step
    auto at = [m](int i, int j) { return static_cast<std::size_t>(i) * m + j; };

    cost[at(0, 0)] = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double c0 = cost[at(i, j)];
            if (!std::isfinite(c0)) continue;
            if (i + 1 < n) {
                const double c = c0 + badness(pts[inner[i]], pts[outer[j]], pts[inner[i + 1]]);
                if (c < cost[at(i + 1, j)]) {
                    cost[at(i + 1, j)] = c;
                    from[at(i + 1, j)] = 0;
                }
            }
            if (j + 1 < m) {
                const double c = c0 + badness(pts[inner[i]], pts[outer[j]], pts[outer[j + 1]]);
                if (c < cost[at(i, j + 1)]) {
                    cost[at(i, j + 1)] = c;
                    from[at(i, j + 1)] = 1;
                }
            }
        }
    }
    if (!std::isfinite(cost[at(n - 1, m - 1)]))
        throw MeshError("strip_triangulate: no valid triangulation of band");

    int i = n - 1, j = m - 1;
    std::vector<std::array<int, 3>> rev;
    while (i > 0 || j > 0) {
        if (from[at(i, j)] == 0) {
            rev.push_back({inner[i - 1], outer[j], inner[i]});
            --i;
        } else {
            rev.push_back({inner[i], outer[j - 1], outer[j]});
            --j;
        }
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) tris.push_back(*it);
}

// Interior breakpoints of [0,total], measured from 0, with spacing s0 at 0
// growing by growth_bl while inside bl, then by growth up to cap.
std::vector<double> graded_positions(double total, double s0, double cap, double growth,
                                     double bl = 0.0, double growth_bl = 1.3) {
    if (!(total > 0.0)) throw MeshError("graded_positions: empty interval");
    s0 = std::min(s0, total);
    cap = std::max(cap, s0);
    std::vector<double> sizes;
    double acc = 0.0, s = s0;
    while (acc < total) {
        sizes.push_back(s);
        acc += s;
        s = std::min(s * (acc < bl ? growth_bl : growth), cap);
        if (sizes.size() > 100000) throw MeshError("graded_positions: runaway grading");
    }
    const double scale = total / acc;
    std::vector<double> pos;
    double p = 0.0;
    for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
        p += sizes[k] * scale;
        pos.push_back(p);
    }
    return pos;
}

// breakpoints of [0,total] refined symmetrically toward both ends
std::vector<double> double_graded_positions(double total, double s0, double cap, double growth,
                                            double bl, double growth_bl) {
    const double half = 0.5 * total;
    const auto first = graded_positions(half, s0, cap, growth, bl, growth_bl);
    std::vector<double> pos(first);
    pos.push_back(half);
    for (auto it = first.rbegin(); it != first.rend(); ++it) pos.push_back(total - *it);
    return pos;
}

struct VertexPool {
    std::vector<std::array<double, 2>> coords;
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> index;

    static std::uint64_t key(double v) {
        std::uint64_t k;
        std::memcpy(&k, &v, sizeof k);
        return k;
    }
    int add(double r, double z) {
        if (r == 0.0) r = 0.0;  // collapse -0.0
        if (z == 0.0) z = 0.0;
        auto [it, fresh] = index.try_emplace({key(r), key(z)}, static_cast<int>(coords.size()));
        if (fresh) coords.push_back({r, z});
        return it->second;
    }
};

// Angular nodes on one quarter arc, 0..pi/2. With wall clustering the
// step grows from first_layer/rho (by layer_growth inside the viscous
// thickness) up to the isotropic bulk step.
std::vector<double> make_arc_angles(double rho, double local_dr, double first_layer, double visc,
                                    bool wall_clustered, const MeshOptions& opts) {
    const double quarter = 0.5 * kPi;
    const double bulk = std::clamp(local_dr / rho, 1e-3, opts.far_angle);
    std::vector<double> angles{0.0};
    if (wall_clustered && first_layer > 0.0 && first_layer / rho < bulk) {
        double dphi = first_layer / rho;
        double phi = 0.0;
        while (true) {
            phi += dphi;
            if (phi >= quarter - 0.5 * bulk) break;
            angles.push_back(phi);
            if (dphi >= bulk) break;
            const double g = (phi * rho < visc) ? opts.layer_growth : opts.angular_growth;
            dphi = std::min(dphi * g, bulk);
        }
    }
    const double phi0 = angles.back();
    const int rest = std::max(3, static_cast<int>(std::ceil((quarter - phi0) / bulk)));
    for (int k = 1; k < rest; ++k) angles.push_back(phi0 + (quarter - phi0) * k / rest);
    angles.push_back(quarter);
    return angles;
}

double min_quality(const std::vector<std::array<double, 2>>& v,
                   const std::vector<std::array<int, 3>>& tris) {
    double q = 1.0;
    for (const auto& t : tris) q = std::min(q, triangle_quality(v[t[0]], v[t[1]], v[t[2]]));
    return q;
}

void orient_ccw(const std::vector<std::array<double, 2>>& v,
                std::vector<std::array<int, 3>>& tris) {
    for (auto& t : tris) {
        const P2d a{v[t[0]][0], v[t[0]][1]}, b{v[t[1]][0], v[t[1]][1]}, c{v[t[2]][0], v[t[2]][1]};
        const double area = signed_area(a, b, c);
        if (area == 0.0) throw MeshError("mesh: degenerate triangle");
        if (area < 0.0) std::swap(t[1], t[2]);
    }
}

// Triangle edges must appear twice (interior) or once (boundary), and the
// boundary must coincide with the tagged edge list.
void check_conformity(const MeridianMesh& mesh) {
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++count[{a, b}];
        }
    }
    std::set<std::pair<int, int>> boundary;
    for (const auto& [edge, c] : count) {
        if (c == 1) boundary.insert(edge);
        else if (c != 2)
            throw MeshError("mesh: non-manifold edge");
    }
    std::set<std::pair<int, int>> tagged;
    for (const auto& be : mesh.boundary_edges) {
        int a = be.a, b = be.b;
        if (a > b) std::swap(a, b);
        if (!tagged.insert({a, b}).second) throw MeshError("mesh: duplicate boundary tag");
    }
    if (tagged != boundary) throw MeshError("mesh: tagged boundary does not match triangulation");
}

double first_layer_thickness(const MeshOptions& opts, double visc) {
    if (opts.bl_layers <= 0) return 0.0;
    const int m = opts.bl_layers;
    const double g = opts.layer_growth;
    double t = visc * std::min(0.66 / m, (g - 1.0) / (std::pow(g, m) - 1.0));
    return std::min(t, opts.target_h);
}

}  // namespace

void ApertureDomain::validate() const {
    if (!(d_ap > 0.0) || !(h_ap > 0.0))
        throw MeshError("ApertureDomain: d_ap and h_ap must be > 0");
    if (!(S * d_ap > 0.5 * d_ap))
        throw MeshError("ApertureDomain: truncation sphere must enclose the aperture mouth");
}

bool MeridianMesh::has_tag(BoundaryTag tag) const {
    for (const auto& be : boundary_edges)
        if (be.tag == tag) return true;
    return false;
}

double triangle_quality(const std::array<double, 2>& a, const std::array<double, 2>& b,
                        const std::array<double, 2>& c) {
    const double la = std::hypot(b[0] - c[0], b[1] - c[1]);
    const double lb = std::hypot(a[0] - c[0], a[1] - c[1]);
    const double lc = std::hypot(a[0] - b[0], a[1] - b[1]);
    const double s = 0.5 * (la + lb + lc);
    const double area =
        std::abs(0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])));
    if (!(area > 0.0)) return 0.0;
    const double r_in = area / s;
    const double r_circ = la * lb * lc / (4.0 * area);
    return 2.0 * r_in / r_circ;  // 1 for equilateral
}

MeridianMesh build_aperture_mesh(const ApertureDomain& domain, const MeshOptions& opts) {
    domain.validate();
    if (!(opts.omega > 0.0) || !(opts.nu > 0.0))
        throw MeshError("build_aperture_mesh: omega and nu must be > 0");
    if (!(opts.target_h > 0.0) || opts.target_h >= domain.d_ap)
        throw MeshError("build_aperture_mesh: target_h must lie in (0, d_ap)");
    if (opts.bl_layers < 0) throw MeshError("build_aperture_mesh: bl_layers must be >= 0");

    const double a = 0.5 * domain.d_ap;
    const double h = domain.h_ap;
    const double R = domain.radius();

    const double visc = std::sqrt(2.0 * opts.nu / opts.omega);
    const double first_layer = first_layer_thickness(opts, visc);

    // the corner spacing drives both the rim-singularity grading and the
    // first wall layer inside the neck
    const double s_corner = (opts.bl_layers > 0)
                                ? std::min({first_layer, opts.target_h * 0.5, a * 0.25})
                                : std::min(opts.target_h * 0.5, a * 0.25);
    const double h_center = std::min(opts.target_h, a * 0.5);

    // radial arc stations: [0,a] refined toward the rim, then [a,R]
    // growing geometrically with a proportional-to-radius cap
    std::vector<double> radii{0.0};
    {
        const auto from_rim =
            graded_positions(a, s_corner, h_center, opts.radial_growth, visc, opts.layer_growth);
        for (auto it = from_rim.rbegin(); it != from_rim.rend(); ++it) radii.push_back(a - *it);
        radii.push_back(a);
    }
    {
        std::vector<double> outer;
        double s = s_corner, rho = a, grown = 0.0;
        while (rho < R) {
            grown += s;
            const double g = (grown < visc) ? opts.layer_growth : opts.radial_growth;
            s = std::min(s * g, opts.far_fraction * rho);
            rho += s;
            outer.push_back(rho);
        }
        const double scale = (R - a) / (outer.back() - a);
        for (double v : outer) radii.push_back(a + (v - a) * scale);
        radii.back() = R;
    }

    // arcs (exclude the degenerate center)
    std::vector<double> arc_radii(radii.begin() + 1, radii.end());
    std::vector<std::vector<double>> arc_angles;
    for (std::size_t i = 0; i < arc_radii.size(); ++i) {
        const double rho = arc_radii[i];
        const double dr_local = (i == 0) ? rho : arc_radii[i] - arc_radii[i - 1];
        const bool clustered = (opts.bl_layers > 0) && rho > a * (1.0 + 1e-12);
        arc_angles.push_back(make_arc_angles(rho, std::max(dr_local, s_corner), first_layer, visc,
                                             clustered, opts));
    }

    VertexPool pool;
    MeridianMesh mesh;
    std::vector<std::array<int, 3>>& tris = mesh.triangles;

    // one half: fan + strip-triangulated bands; zs = +1 above the plate,
    // -1 below (z0 = plate face)
    auto build_half = [&](double z0, double zs) {
        auto place = [&](double rho, double phi) {
            const double r = (phi >= 0.5 * kPi) ? 0.0 : rho * std::cos(phi);
            return pool.add(r, z0 + zs * rho * std::sin(phi));
        };
        const int center = pool.add(0.0, z0);
        std::vector<int> prev;
        for (double phi : arc_angles[0]) prev.push_back(place(arc_radii[0], phi));
        for (std::size_t k = 0; k + 1 < prev.size(); ++k)
            tris.push_back({center, prev[k], prev[k + 1]});
        for (std::size_t j = 1; j < arc_radii.size(); ++j) {
            std::vector<int> cur;
            for (double phi : arc_angles[j]) cur.push_back(place(arc_radii[j], phi));
            // badness evaluated in the half's own (mirrored) frame
            std::vector<P2d> pts(pool.coords.size());
            for (std::size_t i = 0; i < pool.coords.size(); ++i)
                pts[i] = {pool.coords[i][0], zs * (pool.coords[i][1] - z0)};
            strip_triangulate(pts, prev, cur, tris);
            prev = cur;
        }
        return prev;  // outermost arc nodes, ordered by increasing angle
    };
    const std::vector<int> arc_up = build_half(0.0, 1.0);
    const std::vector<int> arc_lo = build_half(-h, -1.0);

    // neck tensor grid on [0,a] x [-h,0]; r stations shared with the mouth
    std::vector<double> neck_r;
    for (double r : radii)
        if (r <= a) neck_r.push_back(r);
    std::vector<double> neck_z{0.0};
    {
        const double cap = std::min(opts.target_h, std::max(h, a));
        for (double p : double_graded_positions(h, std::min(s_corner, 0.45 * h), cap,
                                                opts.radial_growth, visc, opts.layer_growth))
            neck_z.push_back(-p);
        neck_z.push_back(-h);
    }
    {
        std::vector<std::vector<int>> grid(neck_z.size());
        for (std::size_t iz = 0; iz < neck_z.size(); ++iz)
            for (double r : neck_r) grid[iz].push_back(pool.add(r, neck_z[iz]));
        for (std::size_t iz = 0; iz + 1 < neck_z.size(); ++iz) {
            for (std::size_t ir = 0; ir + 1 < neck_r.size(); ++ir) {
                const int v00 = grid[iz][ir], v01 = grid[iz][ir + 1];
                const int v10 = grid[iz + 1][ir], v11 = grid[iz + 1][ir + 1];
                tris.push_back({v00, v10, v11});
                tris.push_back({v00, v11, v01});
            }
        }
    }

    mesh.vertices = pool.coords;
    orient_ccw(mesh.vertices, mesh.triangles);

    // tagged boundary, fluid on the left
    auto add_edges = [&](const std::vector<int>& chain, BoundaryTag tag) {
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            mesh.boundary_edges.push_back({chain[i], chain[i + 1], tag});
    };
    std::vector<int> chain;
    for (double r : radii)
        if (r >= a) chain.push_back(pool.add(r, 0.0));  // top wall (a,0)->(R,0)
    add_edges(chain, BoundaryTag::Wall);
    add_edges(arc_up, BoundaryTag::SpherePlus);  // (R,0)->(0,R)
    chain.clear();                               // axis (0,R)->(0,-h-R)
    for (auto it = arc_radii.rbegin(); it != arc_radii.rend(); ++it)
        chain.push_back(pool.add(0.0, *it));
    for (double z : neck_z) chain.push_back(pool.add(0.0, z));
    for (double rho : arc_radii) chain.push_back(pool.add(0.0, -h - rho));
    add_edges(chain, BoundaryTag::Axis);
    chain.assign(arc_lo.rbegin(), arc_lo.rend());  // (0,-h-R)->(R,-h)
    add_edges(chain, BoundaryTag::SphereMinus);
    chain.clear();
    for (auto it = radii.rbegin(); it != radii.rend(); ++it)
        if (*it >= a) chain.push_back(pool.add(*it, -h));  // bottom wall (R,-h)->(a,-h)
    add_edges(chain, BoundaryTag::Wall);
    chain.clear();
    for (auto it = neck_z.rbegin(); it != neck_z.rend(); ++it)
        chain.push_back(pool.add(a, *it));  // neck side (a,-h)->(a,0)
    add_edges(chain, BoundaryTag::Wall);

    mesh.bl_first_layer = first_layer;
    mesh.viscous_thickness = visc;
    mesh.uniform_no_bl = (opts.bl_layers == 0);
    mesh.min_quality = min_quality(mesh.vertices, mesh.triangles);
    if (mesh.min_quality < opts.quality_floor)
        throw MeshError("build_aperture_mesh: element quality below configured floor");

    check_conformity(mesh);
    return mesh;
}

MeridianMesh build_tube_mesh(double radius, double length, const MeshOptions& opts) {
    if (!(radius > 0.0) || !(length > 0.0))
        throw MeshError("build_tube_mesh: radius and length must be > 0");
    if (!(opts.target_h > 0.0)) throw MeshError("build_tube_mesh: target_h must be > 0");

    const double visc = std::sqrt(2.0 * opts.nu / opts.omega);
    const double first_layer = first_layer_thickness(opts, visc);
    const double s_wall = (opts.bl_layers > 0) ? std::min(first_layer, 0.3 * radius)
                                               : std::min(opts.target_h, 0.3 * radius);

    std::vector<double> rpos{0.0};
    {
        const auto from_wall =
            graded_positions(radius, s_wall, std::min(opts.target_h, 0.5 * radius),
                             opts.radial_growth, visc, opts.layer_growth);
        for (auto it = from_wall.rbegin(); it != from_wall.rend(); ++it)
            rpos.push_back(radius - *it);
        rpos.push_back(radius);
    }
    std::vector<double> zpos;
    {
        const int nz = std::max(2, static_cast<int>(std::ceil(length / opts.target_h)));
        for (int i = 0; i <= nz; ++i) zpos.push_back(length * i / nz);
    }

    VertexPool pool;
    MeridianMesh mesh;
    std::vector<std::vector<int>> grid(zpos.size());
    for (std::size_t iz = 0; iz < zpos.size(); ++iz)
        for (double r : rpos) grid[iz].push_back(pool.add(r, zpos[iz]));
    for (std::size_t iz = 0; iz + 1 < zpos.size(); ++iz) {
        for (std::size_t ir = 0; ir + 1 < rpos.size(); ++ir) {
            const int v00 = grid[iz][ir], v01 = grid[iz][ir + 1];
            const int v10 = grid[iz + 1][ir], v11 = grid[iz + 1][ir + 1];
            mesh.triangles.push_back({v00, v01, v11});
            mesh.triangles.push_back({v00, v11, v10});
        }
    }
    mesh.vertices = pool.coords;
    orient_ccw(mesh.vertices, mesh.triangles);

    auto add_edges = [&](const std::vector<int>& chain, BoundaryTag tag) {
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            mesh.boundary_edges.push_back({chain[i], chain[i + 1], tag});
    };
    std::vector<int> chain;
    for (double r : rpos) chain.push_back(pool.add(r, 0.0));
    add_edges(chain, BoundaryTag::SphereMinus);  // z=0 end disc, p = -1/2
    chain.clear();
    for (double z : zpos) chain.push_back(pool.add(radius, z));
    add_edges(chain, BoundaryTag::Wall);
    chain.clear();
    for (auto it = rpos.rbegin(); it != rpos.rend(); ++it) chain.push_back(pool.add(*it, length));
    add_edges(chain, BoundaryTag::SpherePlus);  // z=length end disc, p = +1/2
    chain.clear();
    for (auto it = zpos.rbegin(); it != zpos.rend(); ++it) chain.push_back(pool.add(0.0, *it));
    add_edges(chain, BoundaryTag::Axis);

    mesh.bl_first_layer = first_layer;
    mesh.viscous_thickness = visc;
    mesh.uniform_no_bl = (opts.bl_layers == 0);
    mesh.min_quality = min_quality(mesh.vertices, mesh.triangles);
    if (mesh.min_quality < opts.quality_floor)
        throw MeshError("build_tube_mesh: element quality below configured floor");
    check_conformity(mesh);
    return mesh;
}

void write_mesh_text(const MeridianMesh& mesh, std::ostream& out) {
    out << "meridian-mesh 1\n";
    out << "vertices " << mesh.vertices.size() << "\n";
    for (const auto& v : mesh.vertices) out << v[0] << " " << v[1] << "\n";
    out << "triangles " << mesh.triangles.size() << "\n";
    for (const auto& t : mesh.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
    out << "boundary_edges " << mesh.boundary_edges.size() << "\n";
    static const char* names[] = {"wall", "axis", "sphere_plus", "sphere_minus"};
    for (const auto& e : mesh.boundary_edges)
        out << e.a << " " << e.b << " " << names[static_cast<int>(e.tag)] << "\n";
}

}  // namespace linerkit
