#include "cpfluct/cavity_modes.hpp"

#include <algorithm>
#include <cmath>

#include "cpfluct/units.hpp"

namespace cpfluct {

PolarizationTensor polarization_sum(const Vec3& k) {
    const double kk = dot(k, k);
    if (!(kk > 0.0))
        throw std::domain_error("polarization_sum: zero wavevector");
    PolarizationTensor p;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            p.m[a][b] = (a == b ? 1.0 : 0.0) - k[a] * k[b] / kk;
    return p;
}

double box_volume(const BoxSpec& box) {
    return std::visit(
        [](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, BoxSingleWall>)
                return b.side * b.side * b.side;
            else
                return b.transverse_side * b.transverse_side * b.gap;
        },
        box);
}

Vec3 mode_function_single_wall(const Vec3& k, const Vec3& e, const Vec3& r,
                               const BoxSingleWall& box) {
    const double L = box.side;
    if (!(L > 0.0)) throw std::domain_error("mode function: box side must be positive");
    const double half = 0.5 * L;
    if (r[2] < 0.0 || r[2] > L || std::abs(r[0]) > half || std::abs(r[1]) > half)
        throw std::domain_error("mode function: position outside box");

    const double ax = k[0] * (r[0] + half);
    const double ay = k[1] * (r[1] + half);
    const double az = k[2] * r[2];
    const double s8 = std::sqrt(8.0);
    return Vec3{
        s8 * e[0] * std::cos(ax) * std::sin(ay) * std::sin(az),
        s8 * e[1] * std::sin(ax) * std::cos(ay) * std::sin(az),
        s8 * e[2] * std::sin(ax) * std::sin(ay) * std::cos(az),
    };
}

Vec3 mode_function_two_walls(const Vec3& k, const Vec3& e, const Vec3& r,
                             const BoxTwoWalls& box) {
    const double L1 = box.transverse_side;
    const double L = box.gap;
    if (!(L > 0.0) || !(L1 > 0.0))
        throw std::domain_error("mode function: box sides must be positive");
    if (std::abs(r[2]) > 0.5 * L || std::abs(r[0]) > 0.5 * L1 ||
        std::abs(r[1]) > 0.5 * L1)
        throw std::domain_error("mode function: position outside box");

    const double ax = k[0] * (r[0] + 0.5 * L1);
    const double ay = k[1] * (r[1] + 0.5 * L1);
    const double az = k[2] * (r[2] + 0.5 * L);
    const double s8 = std::sqrt(8.0);
    return Vec3{
        s8 * e[0] * std::cos(ax) * std::sin(ay) * std::sin(az),
        s8 * e[1] * std::sin(ax) * std::cos(ay) * std::sin(az),
        s8 * e[2] * std::sin(ax) * std::sin(ay) * std::cos(az),
    };
}

namespace {

struct StepSizes {
    double sx, sy, sz;  // pi / side per axis
};

StepSizes steps_for(const BoxSpec& box) {
    return std::visit(
        [](const auto& b) -> StepSizes {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, BoxSingleWall>) {
                const double s = M_PI / b.side;
                return {s, s, s};
            } else {
                const double st = M_PI / b.transverse_side;
                return {st, st, M_PI / b.gap};
            }
        },
        box);
}

} // namespace

std::vector<ModeIndex> enumerate_modes(const BoxSpec& box, double k_max,
                                       std::uint64_t max_modes) {
    if (!(k_max > 0.0))
        throw std::domain_error("enumerate_modes: k_max must be positive");
    const StepSizes st = steps_for(box);

    const auto lmax = static_cast<std::uint64_t>(k_max / st.sx);
    const auto mmax = static_cast<std::uint64_t>(k_max / st.sy);
    const auto nmax = static_cast<std::uint64_t>(k_max / st.sz);
    // octant ellipsoid volume x 2 polarizations
    const double est = 2.0 * (M_PI / 6.0) * (lmax + 1.0) * (mmax + 1.0) * (nmax + 1.0);
    if (est > static_cast<double>(max_modes))
        throw ModeBudgetError(
            "enumerate_modes: estimated mode count " +
                std::to_string(static_cast<std::uint64_t>(est)) +
                " exceeds budget " + std::to_string(max_modes),
            static_cast<std::uint64_t>(est));

    std::vector<ModeIndex> out;
    const double k2max = k_max * k_max;
    for (std::uint64_t l = 0; l <= lmax; ++l)
        for (std::uint64_t m = 0; m <= mmax; ++m)
            for (std::uint64_t n = 0; n <= nmax; ++n) {
                const int zeros = (l == 0) + (m == 0) + (n == 0);
                if (zeros >= 2) continue;  // mode function identically zero
                const Vec3 k{l * st.sx, m * st.sy, n * st.sz};
                const double k2 = dot(k, k);
                if (k2 > k2max) continue;
                for (int j = 1; j <= 2; ++j)
                    out.push_back(ModeIndex{
                        {static_cast<int>(l), static_cast<int>(m), static_cast<int>(n)},
                        k, j, constants().c * std::sqrt(k2)});
            }

    std::sort(out.begin(), out.end(), [](const ModeIndex& a, const ModeIndex& b) {
        const double ka = dot(a.k, a.k), kb = dot(b.k, b.k);
        if (ka != kb) return ka < kb;
        if (a.lmn != b.lmn) return a.lmn < b.lmn;
        return a.polarization < b.polarization;
    });
    return out;
}

} // namespace cpfluct
