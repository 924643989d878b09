#include "linerkit/stokes.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace linerkit {

namespace {

// Dunavant degree-6 rule, 12 points, positive weights; weights sum to 1
// and multiply the triangle area.
struct QuadPoint {
    double l0, l1, l2, w;
};

std::array<QuadPoint, 12> triangle_rule() {
    std::array<QuadPoint, 12> q{};
    int k = 0;
    auto push3 = [&](double a, double b, double w) {
        q[k++] = {a, b, b, w};
        q[k++] = {b, a, b, w};
        q[k++] = {b, b, a, w};
    };
    auto push6 = [&](double a, double b, double w) {
        const double c = 1.0 - a - b;
        q[k++] = {a, b, c, w};
        q[k++] = {a, c, b, w};
        q[k++] = {b, a, c, w};
        q[k++] = {b, c, a, w};
        q[k++] = {c, a, b, w};
        q[k++] = {c, b, a, w};
    };
    push3(0.501426509658179, 0.249286745170910, 0.116786275726379);
    push3(0.873821971016996, 0.063089014491502, 0.050844906370207);
    push6(0.053145049844816, 0.310352451033785, 0.082851075618374);
    return q;
}

// 3-point Gauss-Legendre on [0,1]
constexpr double kEdgeS[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
constexpr double kEdgeW[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// P2 shapes and reference gradients at barycentric (l0,l1,l2);
// local nodes: 0,1,2 vertices; 3=edge(0,1), 4=edge(1,2), 5=edge(2,0)
void p2_shapes(double l0, double l1, double l2, double N[6], double dN[6][2]) {
    N[0] = l0 * (2 * l0 - 1);
    N[1] = l1 * (2 * l1 - 1);
    N[2] = l2 * (2 * l2 - 1);
    N[3] = 4 * l0 * l1;
    N[4] = 4 * l1 * l2;
    N[5] = 4 * l2 * l0;
    // d/dxi with l0 = 1-xi-eta, l1 = xi, l2 = eta
    const double g0[2] = {-1, -1}, g1[2] = {1, 0}, g2[2] = {0, 1};
    for (int d = 0; d < 2; ++d) {
        dN[0][d] = (4 * l0 - 1) * g0[d];
        dN[1][d] = (4 * l1 - 1) * g1[d];
        dN[2][d] = (4 * l2 - 1) * g2[d];
        dN[3][d] = 4 * (l1 * g0[d] + l0 * g1[d]);
        dN[4][d] = 4 * (l2 * g1[d] + l1 * g2[d]);
        dN[5][d] = 4 * (l0 * g2[d] + l2 * g0[d]);
    }
}

struct P2Numbering {
    std::vector<std::array<int, 2>> edges;                 // sorted vertex pairs
    std::map<std::pair<int, int>, int> edge_index;
    std::vector<std::array<int, 6>> element_nodes;         // per triangle
    int n_vertices = 0;
    int n_nodes() const { return n_vertices + static_cast<int>(edges.size()); }

    int edge_node(int a, int b) const {
        if (a > b) std::swap(a, b);
        return n_vertices + edge_index.at({a, b});
    }
};

P2Numbering build_numbering(const MeridianMesh& mesh) {
    P2Numbering num;
    num.n_vertices = static_cast<int>(mesh.vertices.size());
    auto edge_id = [&num](int a, int b) {
        if (a > b) std::swap(a, b);
        auto [it, fresh] = num.edge_index.try_emplace({a, b}, static_cast<int>(num.edges.size()));
        if (fresh) num.edges.push_back({a, b});
        return it->second;
    };
    num.element_nodes.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        std::array<int, 6> nodes;
        nodes[0] = t[0];
        nodes[1] = t[1];
        nodes[2] = t[2];
        nodes[3] = num.n_vertices + edge_id(t[0], t[1]);
        nodes[4] = num.n_vertices + edge_id(t[1], t[2]);
        nodes[5] = num.n_vertices + edge_id(t[2], t[0]);
        num.element_nodes.push_back(nodes);
    }
    return num;
}

// outward normal (fluid on the left of a->b) and length of a boundary edge
struct EdgeFrame {
    double nr, nz, len;
};
EdgeFrame edge_frame(const MeridianMesh& mesh, const MeridianMesh::BoundaryEdge& be) {
    const auto& a = mesh.vertices[be.a];
    const auto& b = mesh.vertices[be.b];
    const double tr = b[0] - a[0], tz = b[1] - a[1];
    const double len = std::hypot(tr, tz);
    return {tz / len, -tr / len, len};
}

}  // namespace

StokesSolution solve_aperture(const MeridianMesh& mesh, const GasParameters& gas, double omega,
                              double p_plus, double p_minus) {
    gas.validate();
    if (!(omega > 0.0)) throw NumericalError("solve_aperture: omega must be > 0");
    if (mesh.triangles.empty()) throw MeshError("solve_aperture: empty mesh");

    const P2Numbering num = build_numbering(mesh);
    const int nn = num.n_nodes();
    const int nv = num.n_vertices;

    // constrained velocity nodes
    std::vector<bool> wall(nn, false), axis(nn, false);
    for (const auto& be : mesh.boundary_edges) {
        const int mid = num.edge_node(be.a, be.b);
        if (be.tag == BoundaryTag::Wall) {
            wall[be.a] = wall[be.b] = wall[mid] = true;
        } else if (be.tag == BoundaryTag::Axis) {
            axis[be.a] = axis[be.b] = axis[mid] = true;
        }
    }

    // dof maps: [vr_free | vz_free | p]
    std::vector<int> vr_dof(nn, -1), vz_dof(nn, -1);
    int n_vr = 0, n_vz = 0;
    for (int i = 0; i < nn; ++i) {
        if (!wall[i] && !axis[i]) vr_dof[i] = n_vr++;
        if (!wall[i]) vz_dof[i] = n_vz++;
    }
    const int off_vz = n_vr;
    const int off_p = n_vr + n_vz;
    const int n_dof = off_p + nv;

    const auto rule = triangle_rule();
    const Complex miw(0.0, -omega);  // -i omega mass term
    const double inv_rho = 1.0 / gas.rho0;
    const double nu = gas.nu;

    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(mesh.triangles.size() * 160);

    for (std::size_t el = 0; el < mesh.triangles.size(); ++el) {
        const auto& t = mesh.triangles[el];
        const auto& nodes = num.element_nodes[el];
        const auto& P0 = mesh.vertices[t[0]];
        const auto& P1 = mesh.vertices[t[1]];
        const auto& P2v = mesh.vertices[t[2]];
        const double j11 = P1[0] - P0[0], j12 = P2v[0] - P0[0];
        const double j21 = P1[1] - P0[1], j22 = P2v[1] - P0[1];
        const double detJ = j11 * j22 - j12 * j21;
        const double area = 0.5 * detJ;  // triangles are CCW
        // inverse-transpose of J for gradient push-forward
        const double it11 = j22 / detJ, it12 = -j21 / detJ;
        const double it21 = -j12 / detJ, it22 = j11 / detJ;

        Complex Arr[6][6] = {}, Azz[6][6] = {};
        double Br[3][6] = {}, Bz[3][6] = {};

        for (const auto& qp : rule) {
            double N[6], dNref[6][2];
            p2_shapes(qp.l0, qp.l1, qp.l2, N, dNref);
            double dN[6][2];
            for (int i = 0; i < 6; ++i) {
                dN[i][0] = it11 * dNref[i][0] + it12 * dNref[i][1];
                dN[i][1] = it21 * dNref[i][0] + it22 * dNref[i][1];
            }
            const double M[3] = {qp.l0, qp.l1, qp.l2};
            const double r = qp.l0 * P0[0] + qp.l1 * P1[0] + qp.l2 * P2v[0];
            const double wq = qp.w * area * 2.0 * kPi * r;

            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) {
                    const double grad = dN[i][0] * dN[j][0] + dN[i][1] * dN[j][1];
                    const double mass = N[i] * N[j];
                    const Complex common = (miw * mass + nu * grad) * wq;
                    Arr[i][j] += common + nu * mass / (r * r) * wq;
                    Azz[i][j] += common;
                }
            }
            for (int q = 0; q < 3; ++q) {
                for (int j = 0; j < 6; ++j) {
                    Br[q][j] += -inv_rho * M[q] * (dN[j][0] + N[j] / r) * wq;
                    Bz[q][j] += -inv_rho * M[q] * dN[j][1] * wq;
                }
            }
        }

        for (int i = 0; i < 6; ++i) {
            const int ir = vr_dof[nodes[i]];
            const int iz = vz_dof[nodes[i]];
            for (int j = 0; j < 6; ++j) {
                const int jr = vr_dof[nodes[j]];
                const int jz = vz_dof[nodes[j]];
                if (ir >= 0 && jr >= 0) trip.emplace_back(ir, jr, Arr[i][j]);
                if (iz >= 0 && jz >= 0) trip.emplace_back(off_vz + iz, off_vz + jz, Azz[i][j]);
            }
        }
        for (int q = 0; q < 3; ++q) {
            const int ip = off_p + t[q];
            for (int j = 0; j < 6; ++j) {
                const int jr = vr_dof[nodes[j]];
                const int jz = vz_dof[nodes[j]];
                if (jr >= 0) {
                    trip.emplace_back(ip, jr, Complex(Br[q][j], 0.0));
                    trip.emplace_back(jr, ip, Complex(Br[q][j], 0.0));
                }
                if (jz >= 0) {
                    trip.emplace_back(ip, off_vz + jz, Complex(Bz[q][j], 0.0));
                    trip.emplace_back(off_vz + jz, ip, Complex(Bz[q][j], 0.0));
                }
            }
        }
    }

    // natural boundary term on the truncation surfaces:
    // ell(w) = -(1/rho0) sum_{edges in Gamma+-} p_datum  int (w.n) 2 pi r ds
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n_dof);
    for (const auto& be : mesh.boundary_edges) {
        if (be.tag != BoundaryTag::SpherePlus && be.tag != BoundaryTag::SphereMinus) continue;
        const double datum = (be.tag == BoundaryTag::SpherePlus) ? p_plus : p_minus;
        const EdgeFrame fr = edge_frame(mesh, be);
        const auto& A = mesh.vertices[be.a];
        const auto& B = mesh.vertices[be.b];
        const int nodes[3] = {be.a, be.b, num.edge_node(be.a, be.b)};
        for (int g = 0; g < 3; ++g) {
            const double s = kEdgeS[g];
            const double Ntr[3] = {(1 - s) * (1 - 2 * s), s * (2 * s - 1), 4 * s * (1 - s)};
            const double r = (1 - s) * A[0] + s * B[0];
            const double w = kEdgeW[g] * fr.len * 2.0 * kPi * r;
            for (int i = 0; i < 3; ++i) {
                const double c = -inv_rho * datum * Ntr[i] * w;
                const int ir = vr_dof[nodes[i]];
                const int iz = vz_dof[nodes[i]];
                if (ir >= 0) rhs[ir] += c * fr.nr;
                if (iz >= 0) rhs[off_vz + iz] += c * fr.nz;
            }
        }
    }

    Eigen::SparseMatrix<Complex> A(n_dof, n_dof);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
        throw NumericalError("solve_aperture: sparse factorization failed (singular or "
                             "ill-conditioned saddle-point system)");
    Eigen::VectorXcd x = lu.solve(rhs);

    const double rhs_norm = rhs.norm();
    const double res = (A * x - rhs).norm() / (rhs_norm > 0 ? rhs_norm : 1.0);
    if (!(res < 1e-8)) {
        std::ostringstream msg;
        msg << "solve_aperture: linear solver residual " << res
            << " exceeds 1e-8; system likely ill-conditioned";
        throw NumericalError(msg.str());
    }

    StokesSolution sol;
    sol.mesh = std::make_shared<MeridianMesh>(mesh);
    sol.p2_edges = num.edges;
    sol.vr = Eigen::VectorXcd::Zero(nn);
    sol.vz = Eigen::VectorXcd::Zero(nn);
    sol.p = Eigen::VectorXcd::Zero(nv);
    for (int i = 0; i < nn; ++i) {
        if (vr_dof[i] >= 0) sol.vr[i] = x[vr_dof[i]];
        if (vz_dof[i] >= 0) sol.vz[i] = x[off_vz + vz_dof[i]];
    }
    for (int i = 0; i < nv; ++i) sol.p[i] = x[off_p + i];
    sol.omega = omega;
    sol.p_plus = p_plus;
    sol.p_minus = p_minus;
    sol.solver_residual = res;

    // relative residual of the discrete incompressibility block
    double div_norm = 0.0, scale = 0.0;
    {
        Eigen::VectorXcd full_res = A * x - rhs;
        div_norm = full_res.segment(off_p, nv).norm();
        scale = x.segment(0, off_p).norm() * inv_rho + 1e-300;
    }
    sol.divergence_residual = div_norm / scale;
    if (!(sol.divergence_residual < 1e-8))
        throw NumericalError("solve_aperture: discrete divergence residual above tolerance");
    return sol;
}

Complex flux_through(const StokesSolution& sol, BoundaryTag surface) {
    const MeridianMesh& mesh = *sol.mesh;
    P2Numbering num;  // rebuild the edge map (cheap relative to a solve)
    num.n_vertices = static_cast<int>(mesh.vertices.size());
    num.edges = sol.p2_edges;
    for (std::size_t i = 0; i < num.edges.size(); ++i)
        num.edge_index[{num.edges[i][0], num.edges[i][1]}] = static_cast<int>(i);

    bool found = false;
    Complex flux = 0.0;
    for (const auto& be : mesh.boundary_edges) {
        if (be.tag != surface) continue;
        found = true;
        const EdgeFrame fr = edge_frame(mesh, be);
        const auto& A = mesh.vertices[be.a];
        const auto& B = mesh.vertices[be.b];
        const int nodes[3] = {be.a, be.b, num.edge_node(be.a, be.b)};
        for (int g = 0; g < 3; ++g) {
            const double s = kEdgeS[g];
            const double Ntr[3] = {(1 - s) * (1 - 2 * s), s * (2 * s - 1), 4 * s * (1 - s)};
            const double r = (1 - s) * A[0] + s * B[0];
            Complex vn = 0.0;
            for (int i = 0; i < 3; ++i)
                vn += Ntr[i] * (sol.vr[nodes[i]] * fr.nr + sol.vz[nodes[i]] * fr.nz);
            flux += kEdgeW[g] * fr.len * 2.0 * kPi * r * vn;
        }
    }
    if (!found) throw NumericalError("flux_through: surface tag not present in mesh");
    return flux;
}

Complex rayleigh_single_hole(const StokesSolution& sol, const GasParameters& gas) {
    const Complex fp = flux_through(sol, BoundaryTag::SpherePlus);
    const Complex fm = flux_through(sol, BoundaryTag::SphereMinus);
    const double dp = sol.p_plus - sol.p_minus;
    if (dp == 0.0) throw NumericalError("rayleigh_single_hole: zero imposed pressure jump");
    return Complex(0.0, sol.omega * gas.rho0 / 2.0) * (fp - fm) / dp;
}

EnergyFunctionals solution_energy(const StokesSolution& sol) {
    const MeridianMesh& mesh = *sol.mesh;
    P2Numbering num = build_numbering(mesh);
    const auto rule = triangle_rule();
    double vel2 = 0.0, grad2 = 0.0;
    for (std::size_t el = 0; el < mesh.triangles.size(); ++el) {
        const auto& t = mesh.triangles[el];
        const auto& nodes = num.element_nodes[el];
        const auto& P0 = mesh.vertices[t[0]];
        const auto& P1 = mesh.vertices[t[1]];
        const auto& P2v = mesh.vertices[t[2]];
        const double j11 = P1[0] - P0[0], j12 = P2v[0] - P0[0];
        const double j21 = P1[1] - P0[1], j22 = P2v[1] - P0[1];
        const double detJ = j11 * j22 - j12 * j21;
        const double area = 0.5 * detJ;
        const double it11 = j22 / detJ, it12 = -j21 / detJ;
        const double it21 = -j12 / detJ, it22 = j11 / detJ;
        for (const auto& qp : rule) {
            double N[6], dNref[6][2];
            p2_shapes(qp.l0, qp.l1, qp.l2, N, dNref);
            const double r = qp.l0 * P0[0] + qp.l1 * P1[0] + qp.l2 * P2v[0];
            const double wq = qp.w * area * 2.0 * kPi * r;
            Complex vrq = 0, vzq = 0, dvr[2] = {0, 0}, dvz[2] = {0, 0};
            for (int i = 0; i < 6; ++i) {
                const double gr = it11 * dNref[i][0] + it12 * dNref[i][1];
                const double gz = it21 * dNref[i][0] + it22 * dNref[i][1];
                vrq += N[i] * sol.vr[nodes[i]];
                vzq += N[i] * sol.vz[nodes[i]];
                dvr[0] += gr * sol.vr[nodes[i]];
                dvr[1] += gz * sol.vr[nodes[i]];
                dvz[0] += gr * sol.vz[nodes[i]];
                dvz[1] += gz * sol.vz[nodes[i]];
            }
            vel2 += (std::norm(vrq) + std::norm(vzq)) * wq;
            grad2 += (std::norm(dvr[0]) + std::norm(dvr[1]) + std::norm(dvz[0]) +
                      std::norm(dvz[1]) + std::norm(vrq) / (r * r)) *
                     wq;
        }
    }
    return {vel2, grad2};
}

std::array<Complex, 2> evaluate_velocity(const StokesSolution& sol, double r, double z) {
    const MeridianMesh& mesh = *sol.mesh;
    P2Numbering num = build_numbering(mesh);
    for (std::size_t el = 0; el < mesh.triangles.size(); ++el) {
        const auto& t = mesh.triangles[el];
        const auto& P0 = mesh.vertices[t[0]];
        const auto& P1 = mesh.vertices[t[1]];
        const auto& P2v = mesh.vertices[t[2]];
        const double j11 = P1[0] - P0[0], j12 = P2v[0] - P0[0];
        const double j21 = P1[1] - P0[1], j22 = P2v[1] - P0[1];
        const double detJ = j11 * j22 - j12 * j21;
        const double xi = (j22 * (r - P0[0]) - j12 * (z - P0[1])) / detJ;
        const double eta = (-j21 * (r - P0[0]) + j11 * (z - P0[1])) / detJ;
        const double l0 = 1.0 - xi - eta;
        const double tol = -1e-10;
        if (xi < tol || eta < tol || l0 < tol) continue;
        double N[6], dNref[6][2];
        p2_shapes(l0, xi, eta, N, dNref);
        Complex vrq = 0, vzq = 0;
        for (int i = 0; i < 6; ++i) {
            vrq += N[i] * sol.vr[num.element_nodes[el][i]];
            vzq += N[i] * sol.vz[num.element_nodes[el][i]];
        }
        return {vrq, vzq};
    }
    throw NumericalError("evaluate_velocity: point outside mesh");
}

}  // namespace linerkit
