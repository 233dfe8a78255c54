#ifndef CPFLUCT_ORACLE_HPP
#define CPFLUCT_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpfluct/atom.hpp"
#include "cpfluct/fluctuation.hpp"

#include <json.hpp>

namespace cpfluct {

/// Discretization of the brute-force spectral sums. Lengths are SI.
struct ModeSumGrid {
    double k_max = 0.0;                // rad/m hard cutoff
    int n_radial = 40;                 // nodes of the exp-mapped radial rule
    int n_angular = 8;                 // azimuthal nodes (and k_z panel order)
    std::vector<double> eta_schedule;  // m, strictly decreasing damping lengths
    std::optional<std::uint64_t> mc_samples;  // switch the variance to Monte Carlo
    std::uint64_t seed = 0;

    static ModeSumGrid default_single_wall(double distance_m);
    static ModeSumGrid default_two_walls(double gap_m);
    static ModeSumGrid default_variance();

    void validate() const;  // throws std::invalid_argument
};

struct ConvergencePoint {
    double refinement;  // eta (m) for damped sums, refinement level otherwise
    double value;       // SI
};

/// One oracle-vs-closed-form comparison, emitted as JSON for audit.
struct OracleReport {
    std::string quantity;
    std::string unit;
    double value = 0.0;        // oracle, SI
    double closed_form = 0.0;  // analytic module, SI
    double relative_error = 0.0;
    double extrapolation_uncertainty = 0.0;
    std::optional<double> statistical_error;  // Monte Carlo only
    std::vector<ConvergencePoint> convergence_trace;

    nlohmann::json to_json() const;
};

class OracleError : public std::runtime_error {
public:
    OracleError(std::string msg, std::vector<ConvergencePoint> trace_in = {})
        : std::runtime_error(std::move(msg)), trace(std::move(trace_in)) {}
    std::vector<ConvergencePoint> trace;
};

/// Single-wall interaction energy by Abel-damped continuum mode summation,
/// Richardson-extrapolated over the eta schedule. The d-independent
/// divergent vacuum piece is removed by subtracting the far-wall limit of
/// the integrand before integration.
OracleReport mean_energy_modesum(const AtomSpec& atom, double distance_m,
                                 const ModeSumGrid& grid);

/// Same scheme on the d-derivative kernel; compares against the closed-form
/// force law.
OracleReport mean_force_modesum(const AtomSpec& atom, double distance_m,
                                const ModeSumGrid& grid);

/// Windowed force variance as a double spectral integral over mode pairs:
/// Wick pair contractions of the quartic ladder product, one Lorentzian
/// attenuation factor per response integral (net square per pair),
/// polarization sums through the transverse projector. Absolutely
/// convergent, no damping needed. Compares sqrt(variance) to the closed
/// form. Monte Carlo path when grid.mc_samples is set.
OracleReport variance_modesum(const AtomSpec& atom, double distance_m,
                              const MeasurementWindow& window,
                              const ModeSumGrid& grid,
                              double tolerance = 0.02);

/// Two-wall mean force: discrete sum over k_z = n pi / L, continuum
/// transverse integral, Abel-damped and extrapolated.
OracleReport two_wall_force_modesum(const AtomSpec& atom, double gap_m,
                                    double offset_m, const ModeSumGrid& grid);

namespace oracle_detail {
/// Transverse-center average of the product of two mode-function component
/// bilinears. At the transverse center the cross-component terms vanish
/// identically (the mixed cos*sin factors are sin(l pi) = 0 for every
/// discrete mode), so the matrix is diagonal; the surviving squared
/// transverse factors average to 1/16. Exposed for unit testing against
/// explicit position averages of the exact mode functions.
struct BilinearMatrix {
    double xx, yy, zz;  // off-diagonal entries are identically zero
};
BilinearMatrix averaged_force_bilinear(double kz1, double kz2, double z1arg,
                                       double z2arg);
} // namespace oracle_detail

} // namespace cpfluct

#endif
