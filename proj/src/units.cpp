#include "cpfluct/units.hpp"

#include <cmath>
#include <stdexcept>

namespace cpfluct {

const Constants& constants() {
    static const Constants k{
        1.054571817e-34,   // hbar
        2.99792458e8,      // c (exact)
        1.380649e-23,      // k_B (exact)
        8.8541878128e-12,  // epsilon0
    };
    return k;
}

const char* dimension_name(Dimension d) {
    switch (d) {
        case Dimension::Length: return "length";
        case Dimension::Time: return "time";
        case Dimension::Force: return "force";
        case Dimension::Energy: return "energy";
    }
    return "unknown";
}

NaturalScales::NaturalScales(double length_scale_m, double alpha_m3)
    : length_(length_scale_m), alpha_(alpha_m3) {
    if (!(length_ > 0.0))
        throw std::domain_error("NaturalScales: length scale must be positive");
    if (!(alpha_ > 0.0))
        throw std::domain_error("NaturalScales: alpha must be positive");
}

double NaturalScales::scale_for(Dimension d) const {
    const Constants& k = constants();
    switch (d) {
        case Dimension::Length: return length_;
        case Dimension::Time: return length_ / k.c;
        case Dimension::Force:
            return k.hbar * k.c * alpha_ / std::pow(length_, 5);
        case Dimension::Energy:
            return k.hbar * k.c * alpha_ / std::pow(length_, 4);
    }
    throw std::invalid_argument("NaturalScales: unsupported dimension");
}

double NaturalScales::to_natural(const Quantity& q) const {
    return q.value / scale_for(q.dim);
}

Quantity NaturalScales::from_natural(double value, Dimension d) const {
    return Quantity{value * scale_for(d), d};
}

} // namespace cpfluct
