#include "linerkit/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <sstream>

namespace linerkit {

namespace {

const char* kDefaultConfig =
    "; liner DC006*: perforated-plate Helmholtz resonator array\n"
    "[gas]\n"
    "rho0 = 1.2252\n"
    "c = 340.45\n"
    "nu = 14.66e-6\n"
    "\n"
    "[geometry]\n"
    "delta_mm = 8.5\n"
    "d_ap_mm = 1.0\n"
    "h_ap_mm = 1.0\n"
    "a_C = 0.9\n"
    "L_mm = 100\n"
    "\n"
    "[duct]\n"
    "radius_mm = 70\n"
    "liner_length_mm = 69\n"
    "modes = 5\n";

ProjectConfig parse_tree(const boost::property_tree::ptree& pt) {
    ProjectConfig cfg;
    try {
        cfg.gas.rho0 = pt.get<double>("gas.rho0", cfg.gas.rho0);
        cfg.gas.c = pt.get<double>("gas.c", cfg.gas.c);
        cfg.gas.nu = pt.get<double>("gas.nu", cfg.gas.nu);

        cfg.geom.delta = pt.get<double>("geometry.delta_mm", cfg.geom.delta * 1e3) * 1e-3;
        cfg.geom.d_ap = pt.get<double>("geometry.d_ap_mm", cfg.geom.d_ap * 1e3) * 1e-3;
        cfg.geom.h_ap = pt.get<double>("geometry.h_ap_mm", cfg.geom.h_ap * 1e3) * 1e-3;
        cfg.geom.a_C = pt.get<double>("geometry.a_C", cfg.geom.a_C);
        cfg.geom.L = pt.get<double>("geometry.L_mm", cfg.geom.L * 1e3) * 1e-3;

        cfg.duct.R_d = pt.get<double>("duct.radius_mm", cfg.duct.R_d * 1e3) * 1e-3;
        cfg.duct.Z_len = pt.get<double>("duct.liner_length_mm", cfg.duct.Z_len * 1e3) * 1e-3;
        cfg.duct.N_modes = pt.get<int>("duct.modes", cfg.duct.N_modes);
    } catch (const boost::property_tree::ptree_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.gas.validate();
    cfg.geom.validate();
    cfg.duct.validate();
    return cfg;
}

}  // namespace

void DuctGeometry::validate() const {
    if (!(R_d > 0.0)) throw ConfigError("DuctGeometry: radius must be > 0");
    if (!(Z_len > 0.0)) throw ConfigError("DuctGeometry: liner length must be > 0");
    if (N_modes < 1) throw ConfigError("DuctGeometry: modes must be >= 1");
}

ProjectConfig load_config(const std::filesystem::path& path) {
    boost::property_tree::ptree pt;
    try {
        boost::property_tree::read_ini(path.string(), pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return parse_tree(pt);
}

ProjectConfig default_config() {
    boost::property_tree::ptree pt;
    std::istringstream in(kDefaultConfig);
    boost::property_tree::read_ini(in, pt);
    return parse_tree(pt);
}

const std::string& default_config_text() {
    static const std::string text = kDefaultConfig;
    return text;
}

}  // namespace linerkit
