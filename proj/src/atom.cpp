#include "cpfluct/atom.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "cpfluct/units.hpp"
#include <json.hpp>

namespace cpfluct {

AtomSpec make_atom(double alpha, AlphaConvention convention,
                   std::optional<double> omega0, std::string label) {
    if (!(alpha > 0.0))
        throw std::domain_error("AtomSpec: alpha must be positive");
    if (omega0 && !(*omega0 > 0.0))
        throw std::domain_error("AtomSpec: omega0 must be positive when given");
    double a = alpha;
    if (convention == AlphaConvention::SI)
        a = alpha / (4.0 * M_PI * constants().epsilon0);
    return AtomSpec{a, omega0, std::move(label)};
}

FarZoneResult far_zone_check(const AtomSpec& atom, double distance_m) {
    if (!(distance_m > 0.0))
        throw std::domain_error("far_zone_check: distance must be positive");
    FarZoneResult r;
    if (!atom.omega0) return r;  // Unknown, no ratio
    const double ratio = distance_m * (*atom.omega0) / constants().c;
    r.margin_ratio = ratio;
    r.verdict = (ratio > FarZoneResult::threshold) ? FarZone::Yes : FarZone::No;
    return r;
}

SpeciesConfig load_species_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("species config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("species config: parse error in " + path +
                                    ": " + e.what());
    }
    if (!j.contains("alpha") || !j.contains("alpha_convention"))
        throw std::invalid_argument(
            "species config: required keys 'alpha', 'alpha_convention'");

    const std::string conv = j["alpha_convention"].get<std::string>();
    AlphaConvention convention;
    if (conv == "gaussian") convention = AlphaConvention::Gaussian;
    else if (conv == "si") convention = AlphaConvention::SI;
    else
        throw std::invalid_argument(
            "species config: alpha_convention must be 'gaussian' or 'si'");

    std::optional<double> omega0;
    if (j.contains("omega0_rad_s")) omega0 = j["omega0_rad_s"].get<double>();
    std::string label = j.value("label", std::string{});

    SpeciesConfig cfg;
    cfg.atom = make_atom(j["alpha"].get<double>(), convention, omega0, label);
    if (j.contains("mass_kg")) {
        cfg.mass_kg = j["mass_kg"].get<double>();
        if (!(*cfg.mass_kg > 0.0))
            throw std::invalid_argument("species config: mass_kg must be positive");
    }
    return cfg;
}

} // namespace cpfluct
