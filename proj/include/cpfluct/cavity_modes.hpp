#ifndef CPFLUCT_CAVITY_MODES_HPP
#define CPFLUCT_CAVITY_MODES_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cpfluct {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Symmetric 3x3 tensor; here always the transverse projector
/// delta_ab - khat_a khat_b, which is how polarization sums enter every
/// bilinear mode quantity (no explicit polarization basis anywhere).
struct PolarizationTensor {
    std::array<std::array<double, 3>, 3> m{};

    double operator()(int a, int b) const { return m[a][b]; }
    double trace() const { return m[0][0] + m[1][1] + m[2][2]; }
    Vec3 apply(const Vec3& v) const {
        return Vec3{dot({m[0][0], m[0][1], m[0][2]}, v),
                    dot({m[1][0], m[1][1], m[1][2]}, v),
                    dot({m[2][0], m[2][1], m[2][2]}, v)};
    }
};

PolarizationTensor polarization_sum(const Vec3& k);

/// Quantization boxes. The single-wall case is a conducting cube of side
/// `side` with the wall of interest at z = 0 (0 < z < side, |x|,|y| < side/2);
/// the two-wall case is a parallelepiped with gap `gap` along z (walls at
/// z = +-gap/2) and transverse side `transverse_side`.
struct BoxSingleWall {
    double side;
};
struct BoxTwoWalls {
    double transverse_side;
    double gap;
};
using BoxSpec = std::variant<BoxSingleWall, BoxTwoWalls>;

double box_volume(const BoxSpec& box);

/// One discrete cavity mode: integer triple, wavevector (positive octant),
/// polarization slot in {1, 2}, and omega = c |k| by construction.
struct ModeIndex {
    std::array<int, 3> lmn;
    Vec3 k;          // rad/m
    int polarization;
    double omega;    // rad/s
};

/// Mode function of the single-wall box, caller-supplied polarization
/// vector. Includes the sqrt(8) normalization. Throws if r is outside the
/// box.
Vec3 mode_function_single_wall(const Vec3& k, const Vec3& polarization,
                               const Vec3& r, const BoxSingleWall& box);

Vec3 mode_function_two_walls(const Vec3& k, const Vec3& polarization,
                             const Vec3& r, const BoxTwoWalls& box);

class ModeBudgetError : public std::runtime_error {
public:
    ModeBudgetError(std::string msg, std::uint64_t estimate)
        : std::runtime_error(std::move(msg)), estimated_count(estimate) {}
    std::uint64_t estimated_count;
};

/// All modes with |k| <= k_max, two polarization slots each, ordered by
/// (|k|, l, m, n, j). Triples with two or more zero components are dropped
/// (their mode function vanishes identically). Deterministic.
std::vector<ModeIndex> enumerate_modes(const BoxSpec& box, double k_max,
                                       std::uint64_t max_modes = 2'000'000);

} // namespace cpfluct

#endif
