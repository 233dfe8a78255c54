#ifndef CPFLUCT_ATOM_HPP
#define CPFLUCT_ATOM_HPP

#include <optional>
#include <string>

namespace cpfluct {

enum class AlphaConvention { Gaussian, SI };

/// A polarizable ground-state atom. alpha is the static polarizability as a
/// volume (m^3, Gaussian convention); SI input (C m^2/V) is divided by
/// 4 pi epsilon_0 at construction.
struct AtomSpec {
    double alpha;                   // m^3
    std::optional<double> omega0;   // typical transition frequency, rad/s
    std::string label;
};

AtomSpec make_atom(double alpha, AlphaConvention convention,
                   std::optional<double> omega0 = std::nullopt,
                   std::string label = {});

/// d >> c/omega0 is where the static-polarizability force law applies.
/// The check is advisory: the formulas are exact within the model, so a
/// failing margin warns rather than blocks.
enum class FarZone { Yes, No, Unknown };

struct FarZoneResult {
    FarZone verdict = FarZone::Unknown;
    std::optional<double> margin_ratio;  // d * omega0 / c when omega0 known
    static constexpr double threshold = 10.0;
};

FarZoneResult far_zone_check(const AtomSpec& atom, double distance_m);

/// Species config file: a single JSON object
///   { "label": str, "alpha": num, "alpha_convention": "gaussian"|"si",
///     "mass_kg": num (optional), "omega0_rad_s": num (optional) }
struct SpeciesConfig {
    AtomSpec atom;
    std::optional<double> mass_kg;
};

SpeciesConfig load_species_file(const std::string& path);

} // namespace cpfluct

#endif
