#include "cpfluct/fluctuation.hpp"

#include <cmath>
#include <stdexcept>

#include "cpfluct/mean_force.hpp"
#include "cpfluct/numerics.hpp"
#include "cpfluct/units.hpp"

namespace cpfluct {

double window_attenuation(const MeasurementWindow& w, double omega) {
    if (!(w.integration_time > 0.0))
        throw std::domain_error("window: integration time must be positive");
    if (omega < 0.0)
        throw std::domain_error("window_attenuation: omega must be >= 0");
    switch (w.kind) {
        case ResponseKind::Lorentzian:
            return std::exp(-omega * w.integration_time);
    }
    throw std::invalid_argument("window_attenuation: unsupported response kind");
}

const std::array<double, 8>& fluct_polynomial_coefficients() {
    static const std::array<double, 8> c{5.0, 40.0, 145.0, 317.0,
                                         400.0, 285.0, 10.0, 86.0};
    return c;
}

double fluct_polynomial(double x) {
    const auto& c = fluct_polynomial_coefficients();
    const double x2 = x * x;
    double p = 0.0;
    for (int i = 7; i >= 0; --i) p = p * x2 + c[static_cast<std::size_t>(i)];
    return p;
}

double log_fluct_polynomial(double x) {
    const auto& c = fluct_polynomial_coefficients();
    if (x <= 1.0) return std::log(fluct_polynomial(x));
    // factor out x^14 so huge x cannot overflow
    const double ix2 = 1.0 / (x * x);
    double p = 0.0;
    for (int i = 0; i < 8; ++i) p = p * ix2 + c[static_cast<std::size_t>(i)];
    return 14.0 * std::log(x) + std::log(p);
}

namespace natural {

double log_relative_fluct_single_wall(double x) {
    if (!(x > 0.0))
        throw std::domain_error("relative_fluct: x = cT/d must be positive");
    return 0.5 * log_fluct_polynomial(x) - std::log(6.0) - 5.0 * std::log(x) -
           4.0 * std::log1p(x * x);
}

double relative_fluct_single_wall(double x) {
    return std::exp(log_relative_fluct_single_wall(x));
}

} // namespace natural

double force_std_single_wall(const AtomSpec& atom, double distance_m,
                             const MeasurementWindow& w) {
    if (!(distance_m > 0.0))
        throw std::domain_error("force_std_single_wall: d must be positive");
    if (!(w.integration_time > 0.0))
        throw std::domain_error("force_std_single_wall: T must be positive");
    const Constants& k = constants();
    const double cT = k.c * w.integration_time;
    const double x = cT / distance_m;
    const double log_std = std::log(k.hbar * atom.alpha) + std::log(k.c) -
                           std::log(4.0 * M_PI) - 5.0 * std::log(cT) +
                           0.5 * log_fluct_polynomial(x) -
                           4.0 * std::log1p(x * x);
    return std::exp(log_std);
}

FluctStats relative_fluct_single_wall(const AtomSpec& atom, double distance_m,
                                      const MeasurementWindow& w) {
    if (!(distance_m > 0.0))
        throw std::domain_error("relative_fluct_single_wall: d must be positive");
    const double x = constants().c * w.integration_time / distance_m;
    FluctStats s;
    // alpha cancels in the ratio; it enters only the absolute std
    s.std = force_std_single_wall(atom, distance_m, w);
    s.log_relative = natural::log_relative_fluct_single_wall(x);
    s.relative = std::exp(s.log_relative);
    s.underflowed = (s.relative == 0.0);
    return s;
}

double asymptotic_relative(FluctRegime regime, double distance_m, double cT_m) {
    if (!(distance_m > 0.0) || !(cT_m > 0.0))
        throw std::domain_error("asymptotic_relative: lengths must be positive");
    const double r = distance_m / cT_m;
    switch (regime) {
        case FluctRegime::SmallDistance:
            return std::sqrt(86.0) / 6.0 * std::pow(r, 6);
        case FluctRegime::LargeDistance:
            return std::sqrt(5.0) / 6.0 * std::pow(r, 5);
    }
    throw std::invalid_argument("asymptotic_relative: unknown regime");
}

CrossoverResult crossover_time(double distance_m) {
    if (!(distance_m > 0.0))
        throw std::domain_error("crossover_time: d must be positive");
    const double c = constants().c;

    // Work in x = cT/d; the relative fluctuation depends on x alone.
    const double x_lo = 1e-3, x_hi = 1e3;
    const double f_lo = natural::log_relative_fluct_single_wall(x_lo);
    const double f_hi = natural::log_relative_fluct_single_wall(x_hi);
    if (!(f_lo > 0.0) || !(f_hi < 0.0))
        throw std::domain_error(
            "crossover_time: bracket [1e-3, 1e3] does not straddle relative = 1 "
            "(log values " + std::to_string(f_lo) + ", " + std::to_string(f_hi) + ")");
    // monotonicity assertion over the bracket
    double prev = f_lo;
    for (int i = 1; i <= 60; ++i) {
        const double x = x_lo * std::pow(x_hi / x_lo, i / 60.0);
        const double v = natural::log_relative_fluct_single_wall(x);
        if (!(v < prev))
            throw std::domain_error("crossover_time: ratio not monotone in bracket");
        prev = v;
    }

    const double x_star = brent_root(
        [](double x) { return natural::log_relative_fluct_single_wall(x); },
        x_lo, x_hi, 1e-15);

    CrossoverResult r;
    r.x_ratio = x_star;
    r.time = x_star * distance_m / c;
    r.residual = std::abs(natural::relative_fluct_single_wall(x_star) - 1.0);
    r.estimate_small_branch =
        std::pow(std::sqrt(86.0) / 6.0, 1.0 / 6.0) * distance_m / c;
    r.estimate_large_branch =
        std::pow(std::sqrt(5.0) / 6.0, 1.0 / 5.0) * distance_m / c;
    return r;
}

FluctStats relative_fluct_two_walls(double gap_m, double offset_m,
                                    const MeasurementWindow& w) {
    validate_geometry(TwoWalls{gap_m, offset_m});
    if (offset_m == 0.0)
        throw std::domain_error(
            "relative_fluct_two_walls: mean force vanishes at d = 0; the "
            "relative fluctuation diverges there");
    const double cT = constants().c * w.integration_time;
    const double u = M_PI * std::abs(offset_m) / gap_m;
    const double geom =
        6.0 * std::log(std::abs(std::cos(u))) -
        std::log(std::abs(std::sin(3.0 * u) - 11.0 * std::sin(u)));

    FluctStats s;
    s.std = std::nullopt;  // only the relative form has a closed expression
    s.log_relative = -M_PI * cT / gap_m - 2.5 * std::log(2.0 * M_PI * cT / gap_m) + geom;
    s.relative = std::exp(s.log_relative);
    s.underflowed = (s.relative == 0.0 && std::isfinite(s.log_relative));
    s.asymptotic_valid = (cT / gap_m >= 10.0);
    return s;
}

double transit_time(double cavity_length_m, double mean_speed_m_s) {
    if (!(cavity_length_m > 0.0) || !(mean_speed_m_s > 0.0))
        throw std::domain_error("transit_time: inputs must be positive");
    return cavity_length_m / mean_speed_m_s;
}

double mb_mean_speed(double mass_kg, double temperature_K) {
    if (!(mass_kg > 0.0) || !(temperature_K > 0.0))
        throw std::domain_error("mb_mean_speed: inputs must be positive");
    return std::sqrt(8.0 * constants().k_B * temperature_K / (M_PI * mass_kg));
}

} // namespace cpfluct
