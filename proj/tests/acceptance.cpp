// Acceptance suite: every release criterion in one binary, one PASS/FAIL
// line each. Exit code is the number of failed criteria.
//
//  1. single-wall mean force: mode-sum oracle within 1% of the closed form
//     at natural d (runtime budget 60 s)
//  2. single-wall energy: oracle within 1%, and its finite-difference
//     derivative within 1% of the criterion-1 oracle force
//  3. windowed variance: Wick oracle within 2% at x = cT/d in {0.1, 1, 10}
//     (10 min/point budget); constant-factor disagreements are reported,
//     never rescaled
//  4. asymptotic coefficients sqrt(86)/6 and sqrt(5)/6 recovered from the
//     exact ratio to 0.1%
//  5. crossover at d = 1 um inside [1e-15, 1e-14] s with residual < 1e-9
//  6. two-wall force: odd/zero at the midplane (1e-12), +5 pi^4 hbar c
//     alpha / L^5 at d = L/4 (exact closed form, 1% oracle), single-wall
//     reduction at L/z = 1e3 (0.1%)
//  7. two-wall observability window: log-space identity to 1e-6, no
//     under/overflow across the pipeline
//  8. property suites (boundary conditions, orthonormality, projector,
//     alpha cancellation, scaling, Monte Carlo determinism, Wick toy)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cpfluct/atom.hpp"
#include "cpfluct/cavity_modes.hpp"
#include "cpfluct/fluctuation.hpp"
#include "cpfluct/mean_force.hpp"
#include "cpfluct/numerics.hpp"
#include "cpfluct/oracle.hpp"
#include "cpfluct/units.hpp"

#include "wick_toy.hpp"

using namespace cpfluct;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s  (%s)\n", pass ? "PASS" : "FAIL",
                criterion, what.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

const AtomSpec atom = make_atom(2.4e-29, AlphaConvention::Gaussian, std::nullopt,
                                "acceptance");
const double kDistance = 1e-6;  // canonical 1 um geometry

OracleReport g_force_report;  // shared between criteria 1 and 2

void criterion1_mean_force() {
    const auto t0 = std::chrono::steady_clock::now();
    g_force_report = mean_force_modesum(atom, kDistance,
                                        ModeSumGrid::default_single_wall(kDistance));
    const double dt = seconds_since(t0);
    const bool pass = g_force_report.relative_error <= 0.01 && dt <= 60.0;
    report(1, "single-wall mean force oracle vs -3 hbar c alpha/(2 pi d^5)", pass,
           fmt("relative error %.3g, tolerance 0.01, runtime %.2f s",
               g_force_report.relative_error, dt));
}

void criterion2_energy() {
    const auto grid = ModeSumGrid::default_single_wall(kDistance);
    const OracleReport e = mean_energy_modesum(atom, kDistance, grid);
    const bool e_ok = e.relative_error <= 0.01;

    const double h = 1e-3 * kDistance;
    const double ep =
        mean_energy_modesum(atom, kDistance + h, ModeSumGrid::default_single_wall(kDistance + h)).value;
    const double em =
        mean_energy_modesum(atom, kDistance - h, ModeSumGrid::default_single_wall(kDistance - h)).value;
    const double fd = -(ep - em) / (2.0 * h);
    const double fd_err = std::abs(fd - g_force_report.value) / std::abs(g_force_report.value);
    const bool pass = e_ok && fd_err <= 0.01;
    report(2, "single-wall energy oracle vs -3 hbar c alpha/(8 pi d^4) + dE/dd", pass,
           fmt("energy error %.3g, derivative-vs-force error %.3g, tolerance 0.01",
               e.relative_error, fd_err));
}

void criterion3_variance() {
    bool pass = true;
    std::string detail;
    for (double x : {0.1, 1.0, 10.0}) {
        const auto t0 = std::chrono::steady_clock::now();
        const MeasurementWindow w{x * kDistance / constants().c};
        const OracleReport r =
            variance_modesum(atom, kDistance, w, ModeSumGrid::default_variance());
        const double dt = seconds_since(t0);
        const double ratio = r.value / r.closed_form;
        const bool ok = r.relative_error <= 0.02 && dt <= 600.0;
        pass = pass && ok;
        detail += fmt("x=%g: err %.3g ratio %.4f; ", x, r.relative_error, ratio);
        if (!ok)
            detail += fmt("DISAGREEMENT reported, oracle/closed = %.6f (not rescaled); ", ratio);
    }
    report(3, "Wick-contraction variance oracle vs windowed closed form", pass,
           detail + "tolerance 0.02");
}

void criterion4_asymptotic_fits() {
    const double small_target = std::sqrt(86.0) / 6.0;
    const double large_target = std::sqrt(5.0) / 6.0;
    bool pass = true;
    std::string detail;
    double worst = 0.0;
    for (double x : {100.0, 200.0, 400.0}) {
        const double coeff = natural::relative_fluct_single_wall(x) * std::pow(x, 6.0);
        const double err = std::abs(coeff / small_target - 1.0);
        worst = std::max(worst, err);
        pass = pass && err <= 1e-3;
    }
    detail += fmt("sqrt(86)/6 fit worst %.2e; ", worst);
    worst = 0.0;
    for (double x : {0.01, 0.005, 0.0025}) {
        const double coeff = natural::relative_fluct_single_wall(x) * std::pow(x, 5.0);
        const double err = std::abs(coeff / large_target - 1.0);
        worst = std::max(worst, err);
        pass = pass && err <= 1e-3;
    }
    detail += fmt("sqrt(5)/6 fit worst %.2e; tolerance 1e-3", worst);
    report(4, "asymptotic coefficients from the exact ratio", pass, detail);
}

void criterion5_crossover() {
    const CrossoverResult r = crossover_time(kDistance);
    const bool pass = r.time >= 1e-15 && r.time <= 1e-14 && r.residual < 1e-9;
    report(5, "crossover time at d = 1 um", pass,
           fmt("T* = %.4e s in [1e-15, 1e-14], residual %.2e < 1e-9", r.time,
               r.residual));
}

void criterion6_two_wall() {
    // (a) closed form: zero at the midplane, odd in the offset
    bool odd_ok = (natural::mean_force_two_walls(1.0, 0.0) == 0.0);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uf(1e-6, 0.4999);
    std::uniform_real_distribution<double> uL(0.3, 3.0);
    double worst_odd = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double L = uL(rng);
        const double d = uf(rng) * L;
        const double fp = natural::mean_force_two_walls(L, d);
        const double fm = natural::mean_force_two_walls(L, -d);
        worst_odd = std::max(worst_odd, std::abs(fp + fm) / std::abs(fp));
    }
    odd_ok = odd_ok && worst_odd <= 1e-12;

    // (b) closed form exactly +5 pi^4 at d = L/4; oracle within 1%
    const double f_quarter = natural::mean_force_two_walls(1.0, 0.25);
    const double exact_err = std::abs(f_quarter / (5.0 * std::pow(M_PI, 4)) - 1.0);
    const bool quarter_exact_ok = exact_err <= 1e-12;
    const double L = kDistance;
    const OracleReport r =
        two_wall_force_modesum(atom, L, 0.25 * L, ModeSumGrid::default_two_walls(L));
    const OracleReport r0 =
        two_wall_force_modesum(atom, L, 0.0, ModeSumGrid::default_two_walls(L));
    const bool oracle_ok = r.relative_error <= 0.01 &&
                           std::abs(r0.value) <= 1e-6 * std::abs(r.closed_form);

    // (c) single-wall reduction at L/z = 1e3
    const double ratio = single_wall_limit_of_two_walls(atom, L / 1e3, L);
    const bool limit_ok = std::abs(ratio - 1.0) <= 1e-3;

    const bool pass = odd_ok && quarter_exact_ok && oracle_ok && limit_ok;
    report(6, "two-wall force: symmetry, L/4 value, single-wall reduction", pass,
           fmt("odd residual %.2e (tol 1e-12), L/4 closed error %.2e, ", worst_odd,
               exact_err) +
               fmt("oracle error %.3g (tol 0.01), midplane |F| %.2e, ",
                   r.relative_error, std::abs(r0.value)) +
               fmt("L/z=1e3 ratio-1 = %.2e (tol 1e-3)", ratio - 1.0));
}

void criterion7_observability() {
    const double T = transit_time(8e-3, 800.0);  // 1e-5 s
    const double L = 1e-6;
    const MeasurementWindow w{T};
    const double cT = constants().c * T;

    bool finite_ok = true;
    double worst_id = 0.0;
    for (double off : {1e-10, 1e-9, 1e-8, 0.1 * L, 0.25 * L, 0.49 * L}) {
        const FluctStats s = relative_fluct_two_walls(L, off, w);
        finite_ok = finite_ok && std::isfinite(s.log_relative);
        // reassemble the three log-space terms independently: the window and
        // gap term with the opposite log grouping, the geometry factor at
        // long double. (The leading -pi c T / L is ~1e10, so the identity
        // only probes the decomposition, not an alternative rounding of the
        // big product.)
        const long double u = static_cast<long double>(M_PI) * off / L;
        const long double geom =
            6.0L * std::log(std::abs(std::cos(u))) -
            std::log(std::abs(std::sin(3.0L * u) - 11.0L * std::sin(u)));
        const double expected = -(M_PI * cT / L) +
                                2.5 * std::log(L / (2.0 * M_PI * cT)) +
                                static_cast<double>(geom);
        worst_id = std::max(worst_id, std::abs(s.log_relative - expected));
    }
    const FluctStats probe = relative_fluct_two_walls(L, 1e-10, w);
    const bool negligible = probe.log_relative < -1e9;
    const bool pass = (std::abs(T - 1e-5) < 1e-17) && finite_ok &&
                      worst_id <= 1e-6 && negligible;
    report(7, "two-wall observability at the beam-transit window", pass,
           fmt("T = %.3e s, log identity worst |delta| = %.2e (tol 1e-6), ", T,
               worst_id) +
               fmt("log-relative(1e-10 m) = %.4e (negligible)", probe.log_relative));
}

// --- criterion 8: property suites -----------------------------------------

std::pair<Vec3, Vec3> transverse_basis(const Vec3& k) {
    const double kn = norm(k);
    const Vec3 khat{k[0] / kn, k[1] / kn, k[2] / kn};
    Vec3 ref{0.0, 0.0, 1.0};
    if (std::abs(khat[2]) > 0.9) ref = Vec3{1.0, 0.0, 0.0};
    Vec3 e1{khat[1] * ref[2] - khat[2] * ref[1], khat[2] * ref[0] - khat[0] * ref[2],
            khat[0] * ref[1] - khat[1] * ref[0]};
    const double n1 = norm(e1);
    e1 = {e1[0] / n1, e1[1] / n1, e1[2] / n1};
    const Vec3 e2{khat[1] * e1[2] - khat[2] * e1[1], khat[2] * e1[0] - khat[0] * e1[2],
                  khat[0] * e1[1] - khat[1] * e1[0]};
    return {e1, e2};
}

bool prop_boundary_conditions() {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> idx(0, 6);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const BoxSingleWall box1{1.3};
    const BoxTwoWalls box2{2.9, 0.8};
    double worst = 0.0;
    for (int it = 0; it < 10000; ++it) {
        const std::array<int, 3> lmn{idx(rng), idx(rng), idx(rng)};
        if ((lmn[0] == 0) + (lmn[1] == 0) + (lmn[2] == 0) >= 2) continue;
        const int face = static_cast<int>(rng() % 6);
        const int normal = face / 2;
        if (it % 2 == 0) {
            const Vec3 k{lmn[0] * M_PI / box1.side, lmn[1] * M_PI / box1.side,
                         lmn[2] * M_PI / box1.side};
            const auto [e1, e2] = transverse_basis(k);
            Vec3 r{(u01(rng) - 0.5) * box1.side, (u01(rng) - 0.5) * box1.side,
                   u01(rng) * box1.side};
            const double half = 0.5 * box1.side;
            r[static_cast<std::size_t>(normal)] =
                (normal == 2) ? (face == 4 ? 0.0 : box1.side)
                              : (face % 2 == 0 ? half : -half);
            const Vec3 f = mode_function_single_wall(k, (it % 4 < 2) ? e1 : e2, r, box1);
            for (int a = 0; a < 3; ++a)
                if (a != normal) worst = std::max(worst, std::abs(f[a]));
        } else {
            const Vec3 k{lmn[0] * M_PI / box2.transverse_side,
                         lmn[1] * M_PI / box2.transverse_side, lmn[2] * M_PI / box2.gap};
            const auto [e1, e2] = transverse_basis(k);
            Vec3 r{(u01(rng) - 0.5) * box2.transverse_side,
                   (u01(rng) - 0.5) * box2.transverse_side, (u01(rng) - 0.5) * box2.gap};
            const double half =
                (normal == 2) ? 0.5 * box2.gap : 0.5 * box2.transverse_side;
            r[static_cast<std::size_t>(normal)] = (face % 2 == 0) ? half : -half;
            const Vec3 f = mode_function_two_walls(k, (it % 4 < 2) ? e1 : e2, r, box2);
            for (int a = 0; a < 3; ++a)
                if (a != normal) worst = std::max(worst, std::abs(f[a]));
        }
    }
    std::printf("    boundary conditions: worst tangential residual %.2e\n", worst);
    return worst <= 1e-12;
}

bool prop_orthonormality() {
    const BoxSingleWall box{1.0};
    const auto gt = gauss_legendre(24, -0.5, 0.5);
    const auto gz = gauss_legendre(24, 0.0, 1.0);
    struct Mode {
        Vec3 k, e;
    };
    std::vector<Mode> modes;
    for (const auto& t : {std::array<int, 3>{1, 1, 1}, {2, 1, 3}, {3, 3, 2}}) {
        const Vec3 k{t[0] * M_PI, t[1] * M_PI, t[2] * M_PI};
        const auto [e1, e2] = transverse_basis(k);
        modes.push_back({k, e1});
        modes.push_back({k, e2});
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = i; j < modes.size(); ++j) {
            double acc = 0.0;
            for (std::size_t ix = 0; ix < gt.nodes.size(); ++ix)
                for (std::size_t iy = 0; iy < gt.nodes.size(); ++iy)
                    for (std::size_t iz = 0; iz < gz.nodes.size(); ++iz) {
                        const Vec3 r{gt.nodes[ix], gt.nodes[iy], gz.nodes[iz]};
                        acc += gt.weights[ix] * gt.weights[iy] * gz.weights[iz] *
                               dot(mode_function_single_wall(modes[i].k, modes[i].e, r, box),
                                   mode_function_single_wall(modes[j].k, modes[j].e, r, box));
                    }
            worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    std::printf("    orthonormality: worst deviation %.2e\n", worst);
    return worst <= 1e-6;
}

bool prop_projector_idempotent() {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 k{u(rng), u(rng), u(rng)};
        if (norm(k) < 1e-3) continue;
        const PolarizationTensor p = polarization_sum(k);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double pp = 0.0;
                for (int c = 0; c < 3; ++c) pp += p(a, c) * p(c, b);
                worst = std::max(worst, std::abs(pp - p(a, b)));
            }
    }
    return worst <= 1e-12;
}

bool prop_alpha_cancellation() {
    const AtomSpec a1 = make_atom(2.4e-29, AlphaConvention::Gaussian);
    const AtomSpec a2 = make_atom(3.3e-31, AlphaConvention::Gaussian);
    for (double d : {1e-7, 1e-6, 1e-5})
        for (double T : {1e-15, 1e-14, 1e-13})
            if (relative_fluct_single_wall(a1, d, {T}).relative !=
                relative_fluct_single_wall(a2, d, {T}).relative)
                return false;
    return true;
}

bool prop_scaling() {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> uf(-0.49, 0.49);
    std::uniform_real_distribution<double> ul(0.2, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double d = uf(rng);
        const double lam = ul(rng);
        const double f1 = natural::mean_force_two_walls(1.0, d);
        if (f1 == 0.0) continue;
        const double f2 = natural::mean_force_two_walls(lam, lam * d);
        worst = std::max(worst, std::abs(f2 * std::pow(lam, 5) / f1 - 1.0));
    }
    return worst <= 1e-12;
}

bool prop_mc_determinism() {
    const MeasurementWindow w{kDistance / constants().c};
    ModeSumGrid g = ModeSumGrid::default_variance();
    g.mc_samples = 200'000;
    g.seed = 2718;
    const OracleReport a = variance_modesum(atom, kDistance, w, g);
    const OracleReport b = variance_modesum(atom, kDistance, w, g);
    if (a.value != b.value) return false;
    for (std::size_t i = 0; i < a.convergence_trace.size(); ++i)
        if (a.convergence_trace[i].value != b.convergence_trace[i].value) return false;
    return *a.statistical_error == *b.statistical_error;
}

bool prop_wick_toy() {
    // variance of X = sum C_mn (a-a+)(a-a+) on two modes: explicit
    // occupation-state algebra against the pair-contraction rule, exactly
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int t = 0; t < 50; ++t) {
        double C[2][2];
        C[0][0] = coeff(rng);
        C[1][1] = coeff(rng);
        C[0][1] = C[1][0] = coeff(rng);
        wick_toy::State vac;
        vac.c[0][0] = 1.0;
        const wick_toy::State Xv = wick_toy::apply_X(vac, C);
        const wick_toy::State XXv = wick_toy::apply_X(Xv, C);
        const double trace = C[0][0] + C[1][1];
        double sumsq = 0.0;
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) sumsq += C[m][n] * C[m][n];
        if (XXv.c[0][0] != trace * trace + 2.0 * sumsq) return false;
        if (Xv.c[0][0] != -trace) return false;
    }
    return true;
}

void criterion8_properties() {
    const bool bc = prop_boundary_conditions();
    const bool ortho = prop_orthonormality();
    const bool proj = prop_projector_idempotent();
    const bool alpha = prop_alpha_cancellation();
    const bool scal = prop_scaling();
    const bool mc = prop_mc_determinism();
    const bool wick = prop_wick_toy();
    const bool pass = bc && ortho && proj && alpha && scal && mc && wick;
    report(8, "property suites", pass,
           std::string("boundary=") + (bc ? "ok" : "FAIL") +
               " orthonormality=" + (ortho ? "ok" : "FAIL") +
               " projector=" + (proj ? "ok" : "FAIL") +
               " alpha-cancel=" + (alpha ? "ok" : "FAIL") +
               " scaling=" + (scal ? "ok" : "FAIL") +
               " mc-determinism=" + (mc ? "ok" : "FAIL") +
               " wick-toy=" + (wick ? "ok" : "FAIL"));
}

} // namespace

int main() {
    std::printf("acceptance suite: closed forms vs brute-force spectral oracle\n");
    const auto t0 = std::chrono::steady_clock::now();
    criterion1_mean_force();
    criterion2_energy();
    criterion3_variance();
    criterion4_asymptotic_fits();
    criterion5_crossover();
    criterion6_two_wall();
    criterion7_observability();
    criterion8_properties();
    std::printf("%d criterion failure(s); total runtime %.1f s\n", g_failures,
                seconds_since(t0));
    return g_failures;
}
