#include "linerkit/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "linerkit/csv.hpp"
#include "linerkit/duct.hpp"

namespace linerkit::validation {

namespace {

std::string fmt(double v) { return csv::format_double(v); }

CriterionResult check(const std::string& id, const std::string& description, bool pass,
                      const std::string& detail) {
    return {id, description, detail, pass};
}

std::vector<double> window(double lo, double hi, double step) {
    std::vector<double> f;
    for (double x = lo; x <= hi + 0.5 * step; x += step) f.push_back(std::min(x, hi));
    return f;
}

// first local maximum of D(f) on a 2 Hz grid around the expected value
DissipationExtremum sweep_max(const DuctGeometry& duct, const ImpedanceModel& model,
                              double f_expected, double halfwidth = 20.0) {
    const auto rows =
        dissipation_sweep(duct, model, window(f_expected - halfwidth, f_expected + halfwidth, 2.0));
    const auto extrema = find_dissipation_extrema(rows);
    const DissipationExtremum* best = nullptr;
    for (const auto& e : extrema) {
        if (!e.is_max) continue;
        if (!best || std::abs(e.f - f_expected) < std::abs(best->f - f_expected)) best = &e;
    }
    if (!best) throw NumericalError("validation: no dissipation maximum found near " +
                                    fmt(f_expected) + " Hz");
    return *best;
}

}  // namespace

EndCorrection ingard_series(const LinerGeometry& geom) {
    return EndCorrection::user(Reference::ingard_series_mm * 1e-3 * (geom.d_ap / 1e-3));
}

ComputeKrOptions kr_options(const LinerGeometry& geom, bool full) {
    ComputeKrOptions opts;
    if (full) {
        opts.S_list = {40, 45, 50, 55, 60};
        opts.target_h = geom.d_ap / 20.0;
        opts.bl_layers = 4;
    } else {
        opts.S_list = {40, 60};
        opts.target_h = geom.d_ap / 10.0;
        opts.bl_layers = 3;
    }
    return opts;
}

std::vector<double> kr_frequency_plan() {
    std::vector<double> plan{10, 20};
    for (double f : window(200, 280, 20)) plan.push_back(f);    // L=200 first maximum
    for (double f : window(330, 410, 20)) plan.push_back(f);    // L=100 first resonance
    for (double f : window(490, 570, 20)) plan.push_back(f);    // L=50 first maximum
    for (double f : window(900, 960, 20)) plan.push_back(f);    // L=200 second maximum
    for (double f : window(1730, 1870, 20)) plan.push_back(f);  // second resonances, gap at 1800
    std::sort(plan.begin(), plan.end());
    plan.erase(std::unique(plan.begin(), plan.end()), plan.end());
    return plan;
}

void ensure_kr_coverage(Settings& settings, const std::vector<double>& freqs) {
    const ComputeKrOptions opts = kr_options(settings.config.geom, settings.full);
    std::string s_list;
    for (double S : opts.S_list) {
        if (!s_list.empty()) s_list += ';';
        s_list += fmt(S);
    }

    std::vector<double> missing;
    for (double f : freqs) {
        const KrTable::Row* row = settings.cache.find(f);
        if (!row || row->s_list != s_list || row->mesh_h != opts.target_h) missing.push_back(f);
    }
    if (missing.empty()) return;

    std::mutex mtx;
    std::atomic<std::size_t> next{0};
    std::string first_error;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= missing.size()) return;
            const double f = missing[i];
            try {
                const RayleighConductivity kr = compute_kr(
                    settings.config.geom, settings.config.gas, 2.0 * kPi * f, opts);
                std::lock_guard lock(mtx);
                settings.cache.upsert({f, kr.k_R, to_string(kr.provenance), s_list,
                                       opts.target_h});
                if (settings.progress)
                    settings.progress("k_R(" + fmt(f) + " Hz) = " + fmt(kr.k_R.real()) + " + " +
                                      fmt(kr.k_R.imag()) + "i 1/m");
            } catch (const Error& e) {
                std::lock_guard lock(mtx);
                if (first_error.empty())
                    first_error = "k_R at f=" + fmt(f) + " Hz failed: " + e.what();
            }
        }
    };
    const int jobs = std::max(1, settings.jobs);
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw NumericalError("validation: " + first_error);
}

std::vector<CriterionResult> run_reference_validation(Settings& settings) {
    std::vector<CriterionResult> results;
    const GasParameters& gas = settings.config.gas;
    const LinerGeometry geom100 = settings.config.geom.with_depth(0.1);
    const LinerGeometry geom200 = settings.config.geom.with_depth(0.2);
    const LinerGeometry geom50 = settings.config.geom.with_depth(0.05);
    const DuctGeometry& duct = settings.config.duct;

    // 1: porosity
    {
        const double sigma = porosity(geom100);
        results.push_back(check("C1", "porosity sigma = 0.01087 (DC006*)",
                                std::abs(sigma - 0.01087) < 5e-6, "sigma = " + fmt(sigma)));
    }
    // 2: end corrections
    {
        const double morse = end_correction(geom100, EndCorrection::morse());
        const double ingard2 = end_correction(geom100, EndCorrection::ingard_two_term());
        // exact values 0.848826/0.720623 mm; quoted to the printed digit
        const bool pass =
            std::abs(morse - 0.8488e-3) < 1e-6 && std::abs(ingard2 - 0.720e-3) < 1e-6;
        results.push_back(check("C2", "end corrections: Morse 0.8488 mm, Ingard two-term 0.720 mm",
                                pass,
                                "morse = " + fmt(morse * 1e3) +
                                    " mm, ingard2 = " + fmt(ingard2 * 1e3) + " mm"));
    }
    // 3: pole frequencies
    {
        const auto p100 = pole_frequencies(geom100, gas, 4000.0);
        const auto p200 = pole_frequencies(geom200, gas, 1000.0);
        const bool pass = p100.size() == 2 && std::abs(p100[0] - 1702.25) < 1e-9 &&
                          std::abs(p100[1] - 3404.5) < 1e-9 && p200.size() == 1 &&
                          std::abs(p200[0] - 851.125) < 1e-9;
        results.push_back(check("C3", "chamber poles: 1702.25 Hz (L=100 mm), 851.125 Hz (L=200 mm)",
                                pass,
                                "got " + fmt(p100.empty() ? 0.0 : p100[0]) + ", " +
                                    fmt(p200.empty() ? 0.0 : p200[0]) + " Hz"));
    }
    // 4: Guess resonances (reference values, +-1 Hz)
    const ImpedanceModel morse100 =
        ImpedanceModel::guess(EndCorrection::morse(), geom100, gas, "morse");
    const ImpedanceModel ingard100 =
        ImpedanceModel::guess(ingard_series(geom100), geom100, gas, "ingard");
    {
        const auto rm = resonance_frequencies(morse100, 100.0, 2000.0);
        const auto ri = resonance_frequencies(ingard100, 100.0, 2000.0);
        std::ostringstream detail;
        bool pass = rm.size() >= 2 && ri.size() >= 2;
        if (pass) {
            pass = std::abs(rm[0] - Reference::guess_morse_resonances[0]) <= 1.0 &&
                   std::abs(rm[1] - Reference::guess_morse_resonances[1]) <= 1.0 &&
                   std::abs(ri[0] - Reference::guess_ingard_resonances[0]) <= 1.0 &&
                   std::abs(ri[1] - Reference::guess_ingard_resonances[1]) <= 1.0;
            detail << "morse: " << fmt(rm[0]) << ", " << fmt(rm[1]) << " Hz; ingard: " << fmt(ri[0])
                   << ", " << fmt(ri[1]) << " Hz";
        } else {
            detail << "expected 2 roots per model, got " << rm.size() << "/" << ri.size();
        }
        results.push_back(check("C4", "Guess resonances 362/1797 (Morse), 371/1804 (Ingard), +-1 Hz",
                                pass, detail.str()));
    }
    // 5: Guess resistance independent of end correction (bit-level) and -> 0
    {
        bool identical = true;
        for (double f = 50.0; f <= 1950.0; f += 50.0) {
            if (in_pole_guard(f, geom100, gas)) continue;
            const double a = morse100.zeta(f).zeta.real();
            const double b = ingard100.zeta(f).zeta.real();
            if (a != b) identical = false;
        }
        const double low = morse100.zeta(0.5).zeta.real();
        const bool pass = identical && low < 0.02;
        results.push_back(check(
            "C5", "Guess resistance identical across end corrections (bit-level), -> 0 as f -> 0",
            pass, std::string(identical ? "bit-identical" : "MISMATCH") +
                      ", Re zeta(0.5 Hz) = " + fmt(low)));
    }

    // FEM-backed criteria
    ensure_kr_coverage(settings, kr_frequency_plan());
    const ImpedanceModel ahm100 =
        ImpedanceModel::ahm3v(settings.cache.provider(), geom100, gas);
    const ImpedanceModel ahm200 = ImpedanceModel::ahm3v(settings.cache.provider(), geom200, gas);
    const ImpedanceModel ahm50 = ImpedanceModel::ahm3v(settings.cache.provider(), geom50, gas);

    // 6: AHM-3v resonances
    {
        const double tol = settings.full ? 3.0 : 8.0;
        const auto r1 = resonance_frequencies(ahm100, 335.0, 405.0);
        const auto r2 = resonance_frequencies(ahm100, 1735.0, 1865.0);
        std::ostringstream detail;
        bool pass = r1.size() == 1 && r2.size() == 1;
        if (pass) {
            pass = std::abs(r1[0] - Reference::ahm3v_resonances[0]) <= tol &&
                   std::abs(r2[0] - Reference::ahm3v_resonances[1]) <= tol;
            detail << fmt(r1[0]) << ", " << fmt(r2[0]) << " Hz (tol +-" << tol << ")";
        } else {
            detail << "expected single roots, got " << r1.size() << "/" << r2.size();
        }
        results.push_back(
            check("C6", "AHM-3v resonances 367 and 1799 Hz", pass, detail.str()));
    }
    // 7: low-frequency resistance limit
    {
        const double re = ahm100.zeta(10.0).zeta.real();
        const double rel = std::abs(re - Reference::low_freq_resistance) /
                           Reference::low_freq_resistance;
        results.push_back(check("C7", "Re zeta_AHM-3v(10 Hz) = 0.1947 within 5%", rel <= 0.05,
                                "Re zeta = " + fmt(re) + " (" + fmt(rel * 100) + "% off)"));
    }
    // 8: resistance gap vs Guess (difference measured against the Guess
    // resistance; the reference 19.1%/1.27% values are consistent with
    // this normalization and the low-frequency limit of criterion 7)
    {
        auto gaps = [&](double f) {
            const double a = ahm100.zeta(f).zeta.real();
            const double g = morse100.zeta(f).zeta.real();
            return std::make_pair(100.0 * std::abs(g - a) / g, 100.0 * std::abs(g - a) / a);
        };
        const auto [g367, alt367] = gaps(367.0);
        const auto [g1800, alt1800] = gaps(1800.0);
        const bool pass = std::abs(g367 - Reference::resistance_gap_367) <= 2.0 &&
                          std::abs(g1800 - Reference::resistance_gap_1800) <= 2.0;
        results.push_back(check("C8", "resistance gap vs Guess: 19.1% at 367 Hz, 1.27% at 1800 Hz",
                                pass,
                                "gap(367) = " + fmt(g367) + "% (AHM-relative " + fmt(alt367) +
                                    "%), gap(1800) = " + fmt(g1800) + "% (AHM-relative " +
                                    fmt(alt1800) + "%)"));
    }
    // 9: sign property on every computed row
    {
        bool pass = true;
        std::string bad;
        for (const auto& row : settings.cache.rows()) {
            if (!(row.k_R.real() > 0.0 && row.k_R.imag() < 0.0)) {
                pass = false;
                bad = "violation at f = " + fmt(row.f_hz) + " Hz";
                break;
            }
        }
        results.push_back(check("C9", "Re k_R > 0 and Im k_R < 0 at every computed frequency",
                                pass,
                                pass ? fmt(static_cast<double>(settings.cache.size())) +
                                           " rows checked"
                                     : bad));
    }
    // 10: dissipation maxima (reference values, incl. L = 50/200 mm)
    {
        struct Case {
            const ImpedanceModel* model;
            double expected;
            const char* label;
        };
        const std::vector<Case> cases = {
            {&ahm100, Reference::ahm3v_maxima[0], "ahm3v L=100 first"},
            {&ahm100, Reference::ahm3v_maxima[1], "ahm3v L=100 second"},
            {&morse100, Reference::guess_morse_maxima[0], "guess-morse first"},
            {&morse100, Reference::guess_morse_maxima[1], "guess-morse second"},
            {&ingard100, Reference::guess_ingard_maxima[0], "guess-ingard first"},
            {&ingard100, Reference::guess_ingard_maxima[1], "guess-ingard second"},
            {&ahm200, Reference::ahm3v_L200_maxima[0], "ahm3v L=200 first"},
            {&ahm200, Reference::ahm3v_L200_maxima[1], "ahm3v L=200 second"},
            {&ahm200, Reference::ahm3v_L200_maxima[2], "ahm3v L=200 third"},
            {&ahm50, Reference::ahm3v_L50_maximum, "ahm3v L=50 first"},
        };
        bool pass = true;
        std::ostringstream detail;
        for (const auto& c : cases) {
            const DissipationExtremum m = sweep_max(duct, *c.model, c.expected);
            if (std::abs(m.f - c.expected) > 5.0) pass = false;
            detail << c.label << ": " << fmt(m.f) << " Hz (ref " << fmt(c.expected) << "); ";
        }
        results.push_back(
            check("C10", "dissipation maxima (L = 50/100/200 mm), +-5 Hz", pass,
                  detail.str()));
    }
    // 11: hard-wall pole insertions and the low-frequency limit of D
    {
        const auto rows100 = dissipation_sweep(duct, ahm100, {1702.25});
        const auto rows200 = dissipation_sweep(duct, ahm200, {851.125});
        const auto row20 = dissipation_sweep(duct, ahm100, {20.0});
        const bool pass = rows100.size() == 1 && std::abs(rows100[0].D) <= 1e-6 &&
                          rows200.size() == 1 && std::abs(rows200[0].D) <= 1e-6 &&
                          row20.size() == 1 && row20[0].ok && row20[0].D < 0.02;
        results.push_back(check(
            "C11", "D = 0 at the chamber poles; D(20 Hz) < 0.02", pass,
            "D(1702.25) = " + fmt(rows100[0].D) + ", D(851.125) = " + fmt(rows200[0].D) +
                ", D(20) = " + fmt(row20[0].D)));
    }
    // 12: peak amplitude ordering across chamber depths
    {
        const double d50 = sweep_max(duct, ahm50, Reference::ahm3v_L50_maximum).D;
        const double d100 = sweep_max(duct, ahm100, Reference::ahm3v_maxima[0]).D;
        const double d200 = sweep_max(duct, ahm200, Reference::ahm3v_L200_maxima[0]).D;
        const bool pass = d50 > d100 && d100 > d200;
        results.push_back(check("C12", "first-maximum amplitude ordering D(50) > D(100) > D(200)",
                                pass,
                                "D = " + fmt(d50) + " / " + fmt(d100) + " / " + fmt(d200)));
    }
    return results;
}

}  // namespace linerkit::validation
