// linerkit batch front-end: computes effective Rayleigh conductivities,
// impedance curves, resonance tables, duct dissipation sweeps and the
// validation report for Helmholtz-resonator liners.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "linerkit/config.hpp"
#include "linerkit/csv.hpp"
#include "linerkit/duct.hpp"
#include "linerkit/impedance.hpp"
#include "linerkit/kr.hpp"
#include "linerkit/mesh.hpp"
#include "linerkit/validation.hpp"

namespace fs = std::filesystem;
using namespace linerkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    std::string cache_dir;
    double fmin = 100.0, fmax = 2000.0;
    double fstep = 0.0;  // 0: per-command default
    std::vector<std::string> models;
    std::vector<double> depths_mm;
    int modes = 0;  // 0: from config
    int jobs = 0;   // 0: hardware
    bool force = false;
    bool full = false;
    std::string dump_mesh_dir;
};

fs::path cache_file(const Options& opt) {
    fs::path dir = opt.cache_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("LINERKIT_CACHE_DIR")) dir = env;
        else dir = fs::path(opt.out_dir) / "cache";
    }
    fs::create_directories(dir);
    return dir / "kr_cache.csv";
}

ProjectConfig load_project(const Options& opt) {
    if (opt.config_path.empty()) return default_config();
    return load_config(opt.config_path);
}

int effective_jobs(const Options& opt) {
    if (opt.jobs > 0) return opt.jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 2;
}

std::vector<double> frequency_grid(const Options& opt, double default_step) {
    const double step = opt.fstep > 0.0 ? opt.fstep : default_step;
    if (!(opt.fmin > 0.0) || !(opt.fmax >= opt.fmin))
        throw ConfigError("frequency range must satisfy 0 < fmin <= fmax");
    std::vector<double> grid;
    for (double f = opt.fmin; f <= opt.fmax + 0.5 * step; f += step)
        grid.push_back(std::min(f, opt.fmax));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::string s_list_string(const std::vector<double>& S_list) {
    std::string s;
    for (double S : S_list) {
        if (!s.empty()) s += ';';
        s += csv::format_double(S);
    }
    return s;
}

ImpedanceModel make_model(const std::string& name, const LinerGeometry& geom,
                          const GasParameters& gas, const KrTable& cache) {
    if (name == "ahm3v") return ImpedanceModel::ahm3v(cache.provider(), geom, gas);
    if (name == "guess-morse")
        return ImpedanceModel::guess(EndCorrection::morse(), geom, gas, "morse");
    if (name == "guess-ingard")
        return ImpedanceModel::guess(validation::ingard_series(geom), geom, gas, "ingard");
    throw ConfigError("unknown model '" + name + "' (expected ahm3v, guess-morse, guess-ingard)");
}

std::vector<double> depths_m(const Options& opt, const ProjectConfig& cfg) {
    if (opt.depths_mm.empty()) return {cfg.geom.L};
    std::vector<double> out;
    for (double mm : opt.depths_mm) out.push_back(mm * 1e-3);
    return out;
}

void require_cache_coverage(const KrTable& cache, double fmin, double fmax) {
    if (cache.empty())
        throw ConfigError("AHM-3v requires a k_R cache; run the `kr` subcommand first");
    if (cache.min_f() > fmin || cache.max_f() < fmax) {
        throw ConfigError("k_R cache covers [" + csv::format_double(cache.min_f()) + ", " +
                          csv::format_double(cache.max_f()) + "] Hz but [" +
                          csv::format_double(fmin) + ", " + csv::format_double(fmax) +
                          "] Hz was requested; extend it with the `kr` subcommand");
    }
}

int cmd_kr(const Options& opt) {
    const ProjectConfig cfg = load_project(opt);
    const std::vector<double> grid = frequency_grid(opt, 100.0);
    const ComputeKrOptions kopts = validation::kr_options(cfg.geom, opt.full);
    const std::string s_list = s_list_string(kopts.S_list);

    const fs::path path = cache_file(opt);
    KrTable cache;
    if (fs::exists(path)) cache = KrTable::load_csv(path);

    std::vector<double> todo;
    for (double f : grid) {
        const KrTable::Row* row = cache.find(f);
        const bool hit =
            row && row->s_list == s_list && row->mesh_h == kopts.target_h && !opt.force;
        if (!hit) todo.push_back(f);
    }
    std::cout << "kr: " << grid.size() << " frequencies requested, " << grid.size() - todo.size()
              << " cache hits, " << todo.size() << " solves\n";

    if (!opt.dump_mesh_dir.empty()) {
        fs::create_directories(opt.dump_mesh_dir);
        for (double S : kopts.S_list) {
            MeshOptions mopts;
            mopts.target_h = kopts.target_h;
            mopts.bl_layers = kopts.bl_layers;
            mopts.omega = 2.0 * kPi * grid.front();
            mopts.nu = cfg.gas.nu;
            const MeridianMesh mesh =
                build_aperture_mesh({cfg.geom.d_ap, cfg.geom.h_ap, S}, mopts);
            std::ofstream out(fs::path(opt.dump_mesh_dir) /
                              ("mesh_S" + csv::format_double(S) + ".txt"));
            write_mesh_text(mesh, out);
        }
    }

    std::mutex mtx;
    std::atomic<std::size_t> next{0};
    std::vector<std::string> failures;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const double f = todo[i];
            try {
                const RayleighConductivity kr =
                    compute_kr(cfg.geom, cfg.gas, 2.0 * kPi * f, kopts);
                std::lock_guard lock(mtx);
                cache.upsert({f, kr.k_R, to_string(kr.provenance), s_list, kopts.target_h});
                std::cout << "  f=" << f << " Hz: k_R = " << kr.k_R.real() << " + "
                          << kr.k_R.imag() << "i 1/m\n";
            } catch (const Error& e) {
                std::lock_guard lock(mtx);
                failures.push_back("f=" + csv::format_double(f) + " Hz: " + e.what());
            }
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < effective_jobs(opt); ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    cache.save_csv(path);
    std::cout << "kr: cache written to " << path.string() << " (" << cache.size() << " rows)\n";
    for (const auto& f : failures) std::cerr << "kr: FAILED " << f << "\n";
    return failures.empty() ? kExitOk : kExitNumerical;
}

int cmd_impedance(const Options& opt, bool resonance_report) {
    const ProjectConfig cfg = load_project(opt);
    if (opt.models.empty())
        throw ConfigError("no models selected; pass --model (ahm3v, guess-morse, guess-ingard)");
    KrTable cache;
    const fs::path path = cache_file(opt);
    if (fs::exists(path)) cache = KrTable::load_csv(path);

    fs::create_directories(opt.out_dir);
    const std::vector<double> grid = frequency_grid(opt, resonance_report ? 1.0 : 1.0);

    for (const std::string& name : opt.models) {
        if (name == "ahm3v") require_cache_coverage(cache, opt.fmin, opt.fmax);
        for (double L : depths_m(opt, cfg)) {
            const LinerGeometry geom = cfg.geom.with_depth(L);
            const ImpedanceModel model = make_model(name, geom, cfg.gas, cache);
            const std::string lmm = csv::format_double(L * 1e3);
            if (resonance_report) {
                const auto roots = resonance_frequencies(model, opt.fmin, opt.fmax);
                csv::Table t;
                t.header = {"model", "L_mm", "root_index", "f_hz"};
                for (std::size_t i = 0; i < roots.size(); ++i)
                    t.rows.push_back({model.label, lmm, std::to_string(i),
                                      csv::format_double(roots[i])});
                const fs::path out =
                    fs::path(opt.out_dir) / ("resonance_" + model.label + "_L" + lmm + ".csv");
                csv::write(out, t);
                std::cout << "resonance: " << out.string() << " (" << roots.size() << " roots)\n";
            } else {
                csv::Table t;
                t.header = {"f_hz", "re_zeta", "im_zeta", "model", "L_mm"};
                for (double f : grid) {
                    if (in_pole_guard(f, geom, cfg.gas)) continue;  // punctured band
                    const ImpedanceSample s = model.zeta(f);
                    t.rows.push_back({csv::format_double(f), csv::format_double(s.zeta.real()),
                                      csv::format_double(s.zeta.imag()), model.label, lmm});
                }
                const fs::path out =
                    fs::path(opt.out_dir) / ("zeta_" + model.label + "_L" + lmm + ".csv");
                csv::write(out, t);
                std::cout << "impedance: " << out.string() << " (" << t.rows.size()
                          << " rows)\n";
            }
        }
    }
    return kExitOk;
}

int cmd_duct(const Options& opt) {
    const ProjectConfig cfg = load_project(opt);
    if (opt.models.empty())
        throw ConfigError("no models selected; pass --model (ahm3v, guess-morse, guess-ingard)");
    KrTable cache;
    const fs::path path = cache_file(opt);
    if (fs::exists(path)) cache = KrTable::load_csv(path);

    DuctGeometry duct = cfg.duct;
    if (opt.modes > 0) duct.N_modes = opt.modes;

    fs::create_directories(opt.out_dir);
    const std::vector<double> grid = frequency_grid(opt, 2.0);
    std::size_t total_rows = 0, failed_rows = 0;

    for (const std::string& name : opt.models) {
        if (name == "ahm3v") require_cache_coverage(cache, opt.fmin, opt.fmax);
        for (double L : depths_m(opt, cfg)) {
            const LinerGeometry geom = cfg.geom.with_depth(L);
            const ImpedanceModel model = make_model(name, geom, cfg.gas, cache);
            const std::string lmm = csv::format_double(L * 1e3);

            // frequency-level parallelism with deterministic assembly
            const int jobs = effective_jobs(opt);
            std::vector<std::vector<SweepRow>> parts(jobs);
            std::vector<std::vector<double>> chunks(jobs);
            for (std::size_t i = 0; i < grid.size(); ++i)
                chunks[i % jobs].push_back(grid[i]);
            std::vector<std::thread> pool;
            for (int j = 0; j < jobs; ++j)
                pool.emplace_back([&, j] { parts[j] = dissipation_sweep(duct, model, chunks[j]); });
            for (auto& t : pool) t.join();
            std::vector<SweepRow> rows;
            {
                std::vector<std::size_t> idx(jobs, 0);
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    auto& part = parts[i % jobs];
                    auto& k = idx[i % jobs];
                    // punctured frequencies produce no row
                    if (k < part.size() && part[k].f == grid[i]) rows.push_back(part[k++]);
                }
            }

            csv::Table t;
            t.header = {"f_hz", "T", "R", "D", "model", "L_mm", "N_modes"};
            for (const auto& row : rows) {
                ++total_rows;
                if (!row.ok) {
                    ++failed_rows;
                    t.rows.push_back({csv::format_double(row.f), "failed", "failed", "failed",
                                      model.label, lmm, std::to_string(duct.N_modes)});
                    continue;
                }
                t.rows.push_back({csv::format_double(row.f), csv::format_double(row.T),
                                  csv::format_double(row.R), csv::format_double(row.D),
                                  model.label, lmm, std::to_string(duct.N_modes)});
            }
            const fs::path out =
                fs::path(opt.out_dir) / ("dissipation_" + model.label + "_L" + lmm + ".csv");
            csv::write(out, t);

            csv::Table ex;
            ex.header = {"model", "L_mm", "kind", "f_hz", "D"};
            for (const auto& e : find_dissipation_extrema(rows))
                ex.rows.push_back({model.label, lmm, e.is_max ? "max" : "min",
                                   csv::format_double(e.f), csv::format_double(e.D)});
            const fs::path exout =
                fs::path(opt.out_dir) / ("extrema_" + model.label + "_L" + lmm + ".csv");
            csv::write(exout, ex);
            std::cout << "duct: " << out.string() << " + " << exout.string() << "\n";
        }
    }
    if (total_rows > 0 && failed_rows * 100 > total_rows)
        return kExitNumerical;  // more than 1% of rows failed
    return kExitOk;
}

int cmd_validate(const Options& opt) {
    validation::Settings settings;
    settings.config = load_project(opt);
    settings.full = opt.full;
    settings.jobs = effective_jobs(opt);
    settings.progress = [](const std::string& line) { std::cout << "  " << line << "\n"; };

    const fs::path path = cache_file(opt);
    if (fs::exists(path) && !opt.force) settings.cache = KrTable::load_csv(path);

    std::cout << "validate: " << (opt.full ? "full" : "coarse") << " settings, "
              << settings.jobs << " jobs\n";
    const auto results = validation::run_reference_validation(settings);
    settings.cache.save_csv(path);

    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.description << " — "
                  << r.detail << "\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "validate: all criteria passed\n"
                           : "validate: some criteria FAILED\n");
    return all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helmholtz-resonator liner acoustics toolkit"};
    app.require_subcommand(1);
    app.fallthrough(true);  // accept global options after the subcommand

    Options opt;
    app.add_option("--config", opt.config_path, "configuration file (INI); default: DC006*");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--cache", opt.cache_dir,
                   "k_R cache directory (or LINERKIT_CACHE_DIR; default <out>/cache)");
    app.add_option("--fmin", opt.fmin, "sweep start [Hz]");
    app.add_option("--fmax", opt.fmax, "sweep end [Hz]");
    app.add_option("--fstep", opt.fstep, "sweep step [Hz]");
    app.add_option("--model", opt.models, "models: ahm3v, guess-morse, guess-ingard");
    app.add_option("--depth-mm", opt.depths_mm, "resonator depths L [mm]");
    app.add_option("--modes", opt.modes, "radial modes per region (default 5)");
    app.add_option("--jobs", opt.jobs, "parallel jobs");
    app.add_flag("--force", opt.force, "recompute cached rows");
    app.add_flag("--full", opt.full, "full-fidelity FEM settings");

    auto* kr = app.add_subcommand("kr", "compute the effective Rayleigh conductivity cache");
    kr->add_option("--dump-mesh", opt.dump_mesh_dir, "export meshes (plain text) for inspection");
    auto* imp = app.add_subcommand("impedance", "emit impedance curves per model");
    auto* res = app.add_subcommand("resonance", "emit resonance-frequency tables per model");
    auto* duct = app.add_subcommand("duct", "emit dissipation sweeps and extrema per model");
    auto* val = app.add_subcommand("validate", "run the embedded validation suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (kr->parsed()) return cmd_kr(opt);
        if (imp->parsed()) return cmd_impedance(opt, false);
        if (res->parsed()) return cmd_impedance(opt, true);
        if (duct->parsed()) return cmd_duct(opt);
        if (val->parsed()) return cmd_validate(opt);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
