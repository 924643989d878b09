#pragma once

#include <filesystem>
#include <string>

#include "linerkit/types.hpp"

namespace linerkit {

struct DuctGeometry {
    double R_d = 0.07;     // duct radius [m]
    double Z_len = 0.069;  // lined segment length [m]
    int N_modes = 5;       // radial modes per region

    void validate() const;
};

struct ProjectConfig {
    GasParameters gas;
    LinerGeometry geom;
    DuctGeometry duct;
};

/// INI-style configuration with sections [gas], [geometry], [duct] and
/// explicit unit suffixes on the keys (delta_mm = 8.5).
ProjectConfig load_config(const std::filesystem::path& path);

/// DC006* defaults (the shipped `dc006star.ini`).
ProjectConfig default_config();
const std::string& default_config_text();

}  // namespace linerkit
