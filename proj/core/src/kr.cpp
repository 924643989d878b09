#include "linerkit/kr.hpp"

#include <cmath>
#include <sstream>

#include "linerkit/csv.hpp"
#include "linerkit/extrapolation.hpp"
#include "linerkit/stokes.hpp"

namespace linerkit {

std::string to_string(KrProvenance p) {
    switch (p) {
        case KrProvenance::Extrapolated: return "extrapolated";
        case KrProvenance::SingleS: return "single_s";
        case KrProvenance::External: return "external";
    }
    return "external";
}

KrProvenance kr_provenance_from_string(const std::string& s) {
    if (s == "extrapolated") return KrProvenance::Extrapolated;
    if (s == "single_s") return KrProvenance::SingleS;
    if (s == "external") return KrProvenance::External;
    throw Error("unknown k_R provenance '" + s + "'");
}

void RayleighConductivity::check_signs() const {
    if (!(k_R.real() > 0.0 && k_R.imag() < 0.0)) {
        std::ostringstream msg;
        msg << "RayleighConductivity: sign invariant violated (Re=" << k_R.real()
            << ", Im=" << k_R.imag() << "); this signals a discretization failure";
        throw NumericalError(msg.str());
    }
}

RayleighConductivity compute_kr(const LinerGeometry& geom, const GasParameters& gas, double omega,
                                const ComputeKrOptions& opts) {
    geom.validate();
    gas.validate();
    if (opts.S_list.empty()) throw NumericalError("compute_kr: S_list must be nonempty");
    const double target_h = (opts.target_h > 0.0) ? opts.target_h : geom.d_ap / 10.0;

    std::vector<std::pair<double, Complex>> samples;
    for (double S : opts.S_list) {
        try {
            ApertureDomain domain{geom.d_ap, geom.h_ap, S};
            MeshOptions mopts;
            mopts.target_h = target_h;
            mopts.bl_layers = opts.bl_layers;
            mopts.omega = omega;
            mopts.nu = gas.nu;
            mopts.quality_floor = opts.quality_floor;
            const MeridianMesh mesh = build_aperture_mesh(domain, mopts);
            const StokesSolution sol = solve_aperture(mesh, gas, omega);
            samples.emplace_back(S, rayleigh_single_hole(sol, gas));
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << "compute_kr: stage failed at S=" << S << ": " << e.what();
            throw NumericalError(msg.str());
        }
    }

    RayleighConductivity out;
    out.omega = omega;
    out.samples = samples;
    if (samples.size() >= 2) {
        const ExtrapolationResult fit = extrapolate_kr(samples, opts.extrapolation_degree);
        out.k_R = effective_from_single_hole(fit.value, geom);
        out.provenance = KrProvenance::Extrapolated;
        out.fit_residual = fit.relative_residual;
        out.residual_warning = fit.residual_warning;
    } else {
        out.k_R = effective_from_single_hole(samples.front().second, geom);
        out.provenance = KrProvenance::SingleS;
    }
    out.check_signs();
    return out;
}

KrTable KrTable::load_csv(const std::filesystem::path& path) {
    const csv::Table t = csv::read(path);
    const int cf = t.column("f_hz");
    const int cre = t.column("re_kr_per_m");
    const int cim = t.column("im_kr_per_m");
    const int cprov = t.column("provenance");
    const int cs = t.column("S_list");
    const int ch = t.column("mesh_h");
    if (cf < 0 || cre < 0 || cim < 0 || cprov < 0 || cs < 0 || ch < 0)
        throw Error("KrTable: missing column in " + path.string());
    KrTable table;
    for (const auto& row : t.rows) {
        Row r;
        r.f_hz = csv::parse_double(row[cf]);
        r.k_R = {csv::parse_double(row[cre]), csv::parse_double(row[cim])};
        r.provenance = row[cprov];
        r.s_list = row[cs];
        r.mesh_h = csv::parse_double(row[ch]);
        if (!(r.k_R.real() > 0.0 && r.k_R.imag() < 0.0)) {
            std::ostringstream msg;
            msg << "KrTable: row at f=" << r.f_hz
                << " Hz violates the sign invariant (Re>0, Im<0); refusing to consume it";
            throw NumericalError(msg.str());
        }
        table.upsert(std::move(r));
    }
    return table;
}

void KrTable::save_csv(const std::filesystem::path& path) const {
    csv::Table t;
    t.header = {"f_hz", "re_kr_per_m", "im_kr_per_m", "provenance", "S_list", "mesh_h"};
    for (const auto& [f, r] : rows_) {
        t.rows.push_back({csv::format_double(r.f_hz), csv::format_double(r.k_R.real()),
                          csv::format_double(r.k_R.imag()), r.provenance, r.s_list,
                          csv::format_double(r.mesh_h)});
    }
    csv::write(path, t);
}

void KrTable::upsert(Row row) { rows_[row.f_hz] = std::move(row); }

const KrTable::Row* KrTable::find(double f_hz, double tol_hz) const {
    auto it = rows_.lower_bound(f_hz - tol_hz);
    if (it != rows_.end() && std::abs(it->first - f_hz) <= tol_hz) return &it->second;
    return nullptr;
}

std::vector<KrTable::Row> KrTable::rows() const {
    std::vector<Row> out;
    out.reserve(rows_.size());
    for (const auto& [f, r] : rows_) out.push_back(r);
    return out;
}

double KrTable::min_f() const {
    if (rows_.empty()) throw Error("KrTable: empty");
    return rows_.begin()->first;
}

double KrTable::max_f() const {
    if (rows_.empty()) throw Error("KrTable: empty");
    return rows_.rbegin()->first;
}

Complex KrTable::interpolate(double f_hz) const {
    if (rows_.empty()) throw Error("KrTable: empty table");
    auto hi = rows_.lower_bound(f_hz);
    if (hi != rows_.end() && hi->first == f_hz) return hi->second.k_R;
    if (hi == rows_.begin() || hi == rows_.end()) {
        std::ostringstream msg;
        msg << "KrTable: f=" << f_hz << " Hz outside cache coverage [" << min_f() << ", "
            << max_f() << "] Hz";
        throw Error(msg.str());
    }
    auto lo = std::prev(hi);
    const double w = (f_hz - lo->first) / (hi->first - lo->first);
    return lo->second.k_R * (1.0 - w) + hi->second.k_R * w;
}

std::function<Complex(double)> KrTable::provider() const {
    auto shared = std::make_shared<KrTable>(*this);
    return [shared](double f_hz) { return shared->interpolate(f_hz); };
}

}  // namespace linerkit
