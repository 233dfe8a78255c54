#ifndef CPFLUCT_MEAN_FORCE_HPP
#define CPFLUCT_MEAN_FORCE_HPP

#include <variant>

#include "cpfluct/atom.hpp"

namespace cpfluct {

/// Atom at distance `distance` above a conducting wall at z = 0.
struct SingleWall {
    double distance;  // m, > 0
};

/// Atom between conducting walls at z = +-gap/2; `offset` is measured from
/// the midplane, |offset| < gap/2. Positive force points along +z.
struct TwoWalls {
    double gap;     // m
    double offset;  // m
};

using Geometry = std::variant<SingleWall, TwoWalls>;

void validate_geometry(const Geometry& g);  // throws std::domain_error

/// Signed force with a log-space twin so extreme separations stay
/// representable. sign is -1/0/+1; log_magnitude is ln|value| and is the
/// authoritative field when |value| would over/underflow.
struct ForceValue {
    double value;          // N
    double log_magnitude;  // ln(|value| / 1 N); -inf when value == 0
    int sign;
};

ForceValue force_from_log(int sign, double log_magnitude);

/// Single-wall interaction energy E(d) = -3 hbar c alpha / (8 pi d^4).
/// This is the unique antiderivative of the force law that vanishes at
/// infinite separation; the mode-sum oracle verifies it independently.
double energy_single_wall(const AtomSpec& atom, double distance_m);

/// F(d) = -3 hbar c alpha / (2 pi d^5); negative = toward the wall.
ForceValue mean_force_single_wall(const AtomSpec& atom, double distance_m);

/// F(d) = -(pi^4 hbar c alpha / 8 L^5) [sin(3 pi d/L) - 11 sin(pi d/L)]
///        / cos^5(pi d/L),   odd in d, pulls toward the nearer wall.
/// Within 1e-6 * gap of a wall the evaluation switches to the single-wall
/// asymptote (cos^5 underflows there while the physics is already the
/// one-wall law).
ForceValue mean_force_two_walls(const AtomSpec& atom, double gap_m,
                                double offset_m);

/// Ratio of the two-wall force at wall distance z (offset = gap/2 - z) to
/// the single-wall force at distance z, oriented so perfect agreement is +1.
/// alpha cancels. Approaches 1 as gap/z grows.
double single_wall_limit_of_two_walls(const AtomSpec& atom, double wall_distance_m,
                                      double gap_m);

/// Dimensionless cores, natural units hbar = c = alpha = 1. Exposed so the
/// scale-invariance of the SI wrappers is testable and so the CLI can print
/// natural values.
namespace natural {
double energy_single_wall(double d);
double mean_force_single_wall(double d);
double mean_force_two_walls(double gap, double offset);
} // namespace natural

} // namespace cpfluct

#endif
