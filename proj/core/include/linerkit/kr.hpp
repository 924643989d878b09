#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linerkit/mesh.hpp"
#include "linerkit/types.hpp"

namespace linerkit {

enum class KrProvenance { Extrapolated, SingleS, External };

std::string to_string(KrProvenance p);
KrProvenance kr_provenance_from_string(const std::string& s);

/// Effective Rayleigh conductivity of the array, k_R = K_R / delta^2
/// [1/m]. Physical solutions satisfy Re(k_R) > 0 and Im(k_R) < 0 under
/// the e^{-i omega t} convention.
struct RayleighConductivity {
    Complex k_R;
    double omega = 0.0;
    KrProvenance provenance = KrProvenance::External;
    std::vector<std::pair<double, Complex>> samples;  // (S, K_R(S))
    double fit_residual = 0.0;
    bool residual_warning = false;

    void check_signs() const;  // throws NumericalError on violation
};

struct ComputeKrOptions {
    std::vector<double> S_list{40, 45, 50, 55, 60};
    double target_h = 0.0;  // 0: default d_ap/10
    int bl_layers = 3;
    int extrapolation_degree = -1;  // -1: min(#samples-1, 2)
    double quality_floor = 1e-7;
};

/// Full pipeline for one frequency: mesh/solve/flux per S, 1/S
/// extrapolation, division by the cell area delta^2, sign enforcement.
RayleighConductivity compute_kr(const LinerGeometry& geom, const GasParameters& gas, double omega,
                                const ComputeKrOptions& opts = {});

/// Frequency-indexed k_R cache, CSV-backed
/// (f_hz, re_kr_per_m, im_kr_per_m, provenance, S_list, mesh_h).
class KrTable {
public:
    struct Row {
        double f_hz;
        Complex k_R;
        std::string provenance;
        std::string s_list;  // semicolon-separated
        double mesh_h;
    };

    static KrTable load_csv(const std::filesystem::path& path);
    void save_csv(const std::filesystem::path& path) const;

    void upsert(Row row);
    const Row* find(double f_hz, double tol_hz = 1e-9) const;
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    std::vector<Row> rows() const;

    double min_f() const;
    double max_f() const;

    /// Linear interpolation of Re and Im between samples; throws naming
    /// the gap when f lies outside coverage.
    Complex interpolate(double f_hz) const;

    /// Thread-safe-for-reads interpolating provider.
    std::function<Complex(double)> provider() const;

private:
    std::map<double, Row> rows_;
};

}  // namespace linerkit
