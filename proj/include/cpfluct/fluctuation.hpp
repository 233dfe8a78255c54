#ifndef CPFLUCT_FLUCTUATION_HPP
#define CPFLUCT_FLUCTUATION_HPP

#include <array>
#include <optional>

#include "cpfluct/atom.hpp"

namespace cpfluct {

/// Instrument response over a finite measurement. Only the Lorentzian
/// f(t) = (T/pi) / (t^2 + T^2) is supported; its Fourier transform gives
/// the exponential frequency attenuation used everywhere downstream.
enum class ResponseKind { Lorentzian };

struct MeasurementWindow {
    double integration_time;  // s, > 0
    ResponseKind kind = ResponseKind::Lorentzian;
};

/// exp(-Omega T): the spectral weight a frequency Omega survives with under
/// the window. Omega >= 0 required.
double window_attenuation(const MeasurementWindow& w, double omega);

/// Radicand polynomial of the windowed force standard deviation,
/// P(x) = 5 + 40 x^2 + 145 x^4 + 317 x^6 + 400 x^8 + 285 x^10 + 10 x^12
///        + 86 x^14  with x = cT/d.
const std::array<double, 8>& fluct_polynomial_coefficients();
double fluct_polynomial(double x);
double log_fluct_polynomial(double x);  // ln P(x), safe for extreme x

struct FluctStats {
    std::optional<double> std;  // N; absent where only the relative form exists
    double relative;            // std / |mean|; 0 with underflowed=true if tiny
    double log_relative;        // ln(relative), always finite
    bool underflowed = false;
    bool asymptotic_valid = true;
};

/// Windowed standard deviation of the single-wall force (SI newtons):
/// (hbar c alpha / 4 pi) sqrt(P(x)) / (c^5 T^5 (1 + x^2)^4).
double force_std_single_wall(const AtomSpec& atom, double distance_m,
                             const MeasurementWindow& w);

/// std / |mean|; alpha cancels, the result depends on x = cT/d only.
FluctStats relative_fluct_single_wall(const AtomSpec& atom, double distance_m,
                                      const MeasurementWindow& w);

enum class FluctRegime { SmallDistance, LargeDistance };

/// The two limiting laws: sqrt(86)/6 (d/cT)^6 for d << cT and
/// sqrt(5)/6 (d/cT)^5 for d >> cT. No validity masking; the caller picks.
double asymptotic_relative(FluctRegime regime, double distance_m, double cT_m);

struct CrossoverResult {
    double time;            // s: T* with relative(d, T*) = 1
    double residual;        // |relative(T*) - 1|
    double x_ratio;         // c T* / d
    double estimate_small_branch;  // T from the d<<cT law alone
    double estimate_large_branch;  // T from the d>>cT law alone
};

/// Unique T* where the relative fluctuation crosses 1, from bracketed root
/// finding on the exact expression. Monotonicity over the bracket is
/// asserted numerically before solving.
CrossoverResult crossover_time(double distance_m);

/// Two-wall relative fluctuation (asymptotic in cT/L >> 1):
///   e^(-pi c T / L) / (2 pi c T / L)^(5/2)
///     x cos^6(pi d/L) / |sin(3 pi d/L) - 11 sin(pi d/L)|
/// evaluated in log space. offset = 0 is rejected (the mean force vanishes
/// there and the ratio diverges). asymptotic_valid is false when cT/L < 10.
FluctStats relative_fluct_two_walls(double gap_m, double offset_m,
                                    const MeasurementWindow& w);

/// Beam transit time through a cavity: length / speed.
double transit_time(double cavity_length_m, double mean_speed_m_s);

/// Maxwell-Boltzmann mean speed sqrt(8 k_B T / (pi m)).
double mb_mean_speed(double mass_kg, double temperature_K);

namespace natural {
/// Relative fluctuation as a function of x = cT/d alone:
/// sqrt(P(x)) / (6 x^5 (1 + x^2)^4).
double relative_fluct_single_wall(double x);
double log_relative_fluct_single_wall(double x);
} // namespace natural

} // namespace cpfluct

#endif
