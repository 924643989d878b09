#pragma once

#include <functional>
#include <string>
#include <vector>

#include "linerkit/config.hpp"
#include "linerkit/impedance.hpp"
#include "linerkit/kr.hpp"

namespace linerkit::validation {

/// Reference values from the study of liner DC006*: resonance
/// frequencies (zeros of Im zeta) and dissipation maxima for
/// L = 100 mm, plus the L = 50/200 mm dissipation landmarks and the
/// low-frequency resistance limit.
struct Reference {
    // model label -> {first, second} resonance [Hz], L = 100 mm
    static constexpr double ahm3v_resonances[2] = {367.0, 1799.0};
    static constexpr double guess_morse_resonances[2] = {362.0, 1797.0};
    static constexpr double guess_ingard_resonances[2] = {371.0, 1804.0};
    // dissipation maxima [Hz], L = 100 mm
    static constexpr double ahm3v_maxima[2] = {359.0, 1793.0};
    static constexpr double guess_morse_maxima[2] = {351.0, 1791.0};
    static constexpr double guess_ingard_maxima[2] = {360.0, 1797.0};
    // AHM-3v dissipation maxima for other depths [Hz]
    static constexpr double ahm3v_L200_maxima[3] = {240.0, 930.0, 1750.0};
    static constexpr double ahm3v_L50_maximum = 530.0;
    // resistance
    static constexpr double low_freq_resistance = 0.1947;
    static constexpr double resistance_gap_367 = 19.1;   // percent
    static constexpr double resistance_gap_1800 = 1.27;  // percent
    // Ingard's tabulated series end-correction for the 1 mm aperture
    static constexpr double ingard_series_mm = 0.709;
};

struct Settings {
    ProjectConfig config;
    bool full = false;  // full-fidelity FEM settings instead of the coarse default
    int jobs = 2;
    std::function<void(const std::string&)> progress;  // optional log sink
    KrTable cache;                                     // reused/extended in place
};

struct CriterionResult {
    std::string id;
    std::string description;
    std::string detail;
    bool pass = false;
};

/// End correction used by the `guess-ingard` model: Ingard's tabulated
/// series value, scaled linearly with the aperture diameter.
EndCorrection ingard_series(const LinerGeometry& geom);

/// FEM fidelity for one validation tier.
ComputeKrOptions kr_options(const LinerGeometry& geom, bool full);

/// Frequencies the validation pipeline needs k_R at (resonance brackets,
/// dissipation windows, low-frequency limit).
std::vector<double> kr_frequency_plan();

/// Fill missing plan rows in settings.cache by running the aperture
/// solver (parallel over frequencies).
void ensure_kr_coverage(Settings& settings, const std::vector<double>& freqs);

/// Reference validation: criteria 1-12 (closed-form, FEM-backed and
/// duct-dissipation checks). Cache in settings is extended as needed.
std::vector<CriterionResult> run_reference_validation(Settings& settings);

}  // namespace linerkit::validation
