#ifndef CPFLUCT_UNITS_HPP
#define CPFLUCT_UNITS_HPP

#include <string>

namespace cpfluct {

/// Fixed physical constants (CODATA 2018, SI).
struct Constants {
    double hbar;      // J s
    double c;         // m / s
    double k_B;       // J / K
    double epsilon0;  // F / m, used only to convert SI polarizabilities
};

/// The reference table, loaded once.
const Constants& constants();

enum class Dimension { Length, Time, Force, Energy };

const char* dimension_name(Dimension d);

/// An SI value tagged with its dimension.
struct Quantity {
    double value;
    Dimension dim;
};

/// Conversion between SI and the natural system hbar = c = alpha = 1 in
/// which all core formulas are evaluated. Everything is derived from one
/// length scale plus the atomic polarizability (Gaussian convention, m^3):
///
///   time  = length / c
///   force = hbar c alpha / length^5
///   energy = hbar c alpha / length^4
///
/// The force and energy scales carry alpha because every quantity this
/// library computes is linear in it (the fluctuation variance is quadratic,
/// but only its square root is exposed).
class NaturalScales {
public:
    NaturalScales(double length_scale_m, double alpha_m3);

    double length_scale() const { return length_; }
    double alpha() const { return alpha_; }

    /// SI magnitude of the unit of the given dimension.
    double scale_for(Dimension d) const;

    double to_natural(const Quantity& q) const;
    Quantity from_natural(double value, Dimension d) const;

private:
    double length_;
    double alpha_;
};

/// Printed in every CLI report: alpha is a volume (m^3), the convention in
/// which hbar c alpha / d^5 is a force.
inline const char* unit_convention() { return "gaussian-alpha"; }

} // namespace cpfluct

#endif
