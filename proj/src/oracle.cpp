#include "cpfluct/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cpfluct/cavity_modes.hpp"
#include "cpfluct/mean_force.hpp"
#include "cpfluct/numerics.hpp"
#include "cpfluct/units.hpp"

namespace cpfluct {

ModeSumGrid ModeSumGrid::default_single_wall(double distance_m) {
    ModeSumGrid g;
    g.k_max = 1000.0 / distance_m;
    g.n_radial = 40;
    g.n_angular = 8;
    for (double r : {0.8, 0.4, 0.2, 0.1, 0.05}) g.eta_schedule.push_back(r * distance_m);
    return g;
}

ModeSumGrid ModeSumGrid::default_two_walls(double gap_m) {
    ModeSumGrid g;
    g.k_max = 4200.0 / gap_m;
    g.n_radial = 40;
    g.n_angular = 8;
    for (double r : {0.16, 0.08, 0.04, 0.02, 0.01}) g.eta_schedule.push_back(r * gap_m);
    return g;
}

ModeSumGrid ModeSumGrid::default_variance() {
    ModeSumGrid g;
    g.k_max = 1e15;  // far beyond the window cutoff; e^{-2cTk} dominates
    g.n_radial = 32;
    g.n_angular = 8;
    return g;
}

void ModeSumGrid::validate() const {
    if (!(k_max > 0.0))
        throw std::invalid_argument("ModeSumGrid: k_max must be positive");
    if (n_radial < 8 || n_angular < 8)
        throw std::invalid_argument("ModeSumGrid: node counts must be >= 8");
    for (std::size_t i = 0; i < eta_schedule.size(); ++i) {
        if (!(eta_schedule[i] > 0.0))
            throw std::invalid_argument("ModeSumGrid: eta values must be positive");
        if (i > 0 && !(eta_schedule[i] < eta_schedule[i - 1]))
            throw std::invalid_argument(
                "ModeSumGrid: eta_schedule must be strictly decreasing");
    }
}

nlohmann::json OracleReport::to_json() const {
    nlohmann::json j;
    j["quantity"] = quantity;
    j["unit"] = unit;
    j["value"] = value;
    j["closed_form"] = closed_form;
    j["relative_error"] = relative_error;
    j["extrapolation_uncertainty"] = extrapolation_uncertainty;
    if (statistical_error) j["statistical_error"] = *statistical_error;
    j["unit_convention"] = unit_convention();
    auto& tr = j["convergence_trace"] = nlohmann::json::array();
    for (const auto& p : convergence_trace)
        tr.push_back({{"refinement", p.refinement}, {"value", p.value}});
    return j;
}

namespace oracle_detail {

BilinearMatrix averaged_force_bilinear(double kz1, double kz2, double z1arg,
                                       double z2arg) {
    const double s1 = std::sin(z1arg), c1 = std::cos(z1arg);
    const double s2 = std::sin(z2arg), c2 = std::cos(z2arg);
    // d/dz of sin(kz1 z) sin(kz2 z) and of cos(kz1 z) cos(kz2 z)
    const double S = kz1 * c1 * s2 + kz2 * s1 * c2;
    const double C = -(kz1 * s1 * c2 + kz2 * c1 * s2);
    return BilinearMatrix{S * S / 16.0, S * S / 16.0, C * C / 16.0};
}

} // namespace oracle_detail

namespace {

constexpr double kTailLog = 38.0;  // e^{-38} tail truncation of damped sums

// Dynamical-polarizability slot alpha(k)/alpha. Static in v1 (far zone);
// the hook stays in the integrand signatures for near-zone work.
inline double alpha_shape(double /*k*/) { return 1.0; }

/// Azimuthal integrals of the projector diagonal over the octant quarter
/// circle, built from polarization_sum on actual wavevectors.
struct ProjPhiAvg {
    double xx, yy, zz;
};

ProjPhiAvg phi_averaged_projector(double kz, double k, const QuadratureRule& phi) {
    ProjPhiAvg q{0.0, 0.0, 0.0};
    const double kperp = (k > kz) ? std::sqrt((k - kz) * (k + kz)) : 0.0;
    for (std::size_t i = 0; i < phi.nodes.size(); ++i) {
        const Vec3 kvec{kperp * std::cos(phi.nodes[i]),
                        kperp * std::sin(phi.nodes[i]), kz};
        const PolarizationTensor p = polarization_sum(kvec);
        q.xx += phi.weights[i] * p(0, 0);
        q.yy += phi.weights[i] * p(1, 1);
        q.zz += phi.weights[i] * p(2, 2);
    }
    return q;
}

/// Transverse-averaged squared mode components at height z above the wall
/// the z-factor belongs to: <g_x^2> = <g_y^2> = sin^2(kz z)/4,
/// <g_z^2> = cos^2(kz z)/4. With subtract_far_limit the structureless 1/8
/// (the d -> infinity limit that carries the divergence) is removed.
struct AvgG2 {
    double xy, z;
};

AvgG2 averaged_g2(double kz, double z, bool subtract_far_limit) {
    const double s = std::sin(kz * z), c = std::cos(kz * z);
    AvgG2 g{0.25 * s * s, 0.25 * c * c};
    if (subtract_far_limit) {
        g.xy -= 0.125;
        g.z -= 0.125;
    }
    return g;
}

double d_dz_averaged_g2_xy(double kz, double z) {
    return 0.25 * kz * std::sin(2.0 * kz * z);
}
double d_dz_averaged_g2_z(double kz, double z) {
    return -0.25 * kz * std::sin(2.0 * kz * z);
}

enum class MeanKernel { Energy, Force };

/// One Abel-damped continuum evaluation for the single wall, cylindrical
/// coordinates (k_z smooth-panelled, radial exp-mapped, azimuth by
/// quadrature). Natural units with the atom at z = 1.
double single_wall_damped(MeanKernel which, double eta, const ModeSumGrid& grid,
                          double k_max_nat) {
    const double z = 1.0;
    const double kz_max = std::min(k_max_nat, kTailLog / eta);
    const double panel_w = M_PI / (4.0 * z);
    const int npanels = std::max(8, static_cast<int>(std::ceil(kz_max / panel_w)));
    const QuadratureRule t_rule = gauss_legendre(grid.n_radial, 0.0, 1.0);
    const QuadratureRule phi_rule = gauss_legendre(grid.n_angular, 0.0, 0.5 * M_PI);
    const QuadratureRule panel = gauss_legendre(8, 0.0, 1.0);

    KahanSum total;
    for (int p = 0; p < npanels; ++p) {
        const double a = p * kz_max / npanels;
        const double wdt = kz_max / npanels;
        for (std::size_t iz = 0; iz < panel.nodes.size(); ++iz) {
            const double kz = a + panel.nodes[iz] * wdt;
            const double wkz = panel.weights[iz] * wdt;
            const double damp = std::exp(-eta * kz) / eta;
            double sub = 0.0;
            for (std::size_t it = 0; it < t_rule.nodes.size(); ++it) {
                const double k = kz - std::log1p(-t_rule.nodes[it]) / eta;
                const double wk = t_rule.weights[it] * damp;  // absorbs e^{-eta k} dk
                const ProjPhiAvg q = phi_averaged_projector(kz, k, phi_rule);
                double kern;
                if (which == MeanKernel::Energy) {
                    const AvgG2 g = averaged_g2(kz, z, /*subtract_far_limit=*/true);
                    kern = 8.0 * ((q.xx + q.yy) * g.xy + q.zz * g.z);
                } else {
                    kern = 8.0 * ((q.xx + q.yy) * d_dz_averaged_g2_xy(kz, z) +
                                  q.zz * d_dz_averaged_g2_z(kz, z));
                }
                sub += wk * k * (k * kern) * alpha_shape(k);  // measure k dk, omega = c k
            }
            total.add(wkz * sub);
        }
    }
    // E = -(pi/V) sum_k omega |f|^2 -> -(1/pi^2) integral; F = -dE/dz
    return (which == MeanKernel::Energy ? -1.0 : 1.0) * total.value() / (M_PI * M_PI);
}

double two_wall_damped(double zeta, double eta, const ModeSumGrid& grid,
                       double k_max_nat) {
    const double kz_max = std::min(k_max_nat, (kTailLog + 2.0) / eta);
    const int n_max = static_cast<int>(kz_max / M_PI);
    const QuadratureRule t_rule = gauss_legendre(grid.n_radial, 0.0, 1.0);
    const QuadratureRule phi_rule = gauss_legendre(grid.n_angular, 0.0, 0.5 * M_PI);

    KahanSum total;
    for (int n = 1; n <= n_max; ++n) {
        const double kz = n * M_PI;  // gap = 1 in natural units
        const double damp = std::exp(-eta * kz) / eta;
        double sub = 0.0;
        for (std::size_t it = 0; it < t_rule.nodes.size(); ++it) {
            const double k = kz - std::log1p(-t_rule.nodes[it]) / eta;
            const double wk = t_rule.weights[it] * damp;
            const ProjPhiAvg q = phi_averaged_projector(kz, k, phi_rule);
            const double kern = 8.0 * ((q.xx + q.yy) * d_dz_averaged_g2_xy(kz, zeta) +
                                       q.zz * d_dz_averaged_g2_z(kz, zeta));
            sub += wk * k * (k * kern) * alpha_shape(k);
        }
        total.add(sub);
    }
    return total.value() / M_PI;  // transverse continuum prefactor, V = L1^2 L
}

struct ExtrapolatedRun {
    Extrapolation ex;
    std::vector<ConvergencePoint> trace_nat;  // (eta natural, value natural)
};

ExtrapolatedRun run_eta_schedule(const std::function<double(double)>& eval,
                                 const std::vector<double>& eta_nat) {
    ExtrapolatedRun run;
    std::vector<double> ys;
    ys.reserve(eta_nat.size());
    for (double eta : eta_nat) {
        ys.push_back(eval(eta));
        run.trace_nat.push_back({eta, ys.back()});
    }
    run.ex = extrapolate_to_zero(eta_nat, ys);

    // Reject a diverging tableau: the diagonal steps must shrink (down to a
    // floor where the quadrature error dominates the step size).
    const double floor = 1e-9 * std::max(std::abs(run.ex.value), 1e-300);
    double prev_step = -1.0;
    for (std::size_t m = 1; m < run.ex.trace.size(); ++m) {
        const double step =
            std::abs(run.ex.trace[m].second - run.ex.trace[m - 1].second);
        if (prev_step >= 0.0 && step > prev_step && step > floor)
            throw OracleError(
                "mode-sum extrapolation trace is not monotone; refine the eta "
                "schedule or node counts",
                run.trace_nat);
        prev_step = step;
    }
    return run;
}

std::vector<double> eta_natural(const ModeSumGrid& grid, double scale_m) {
    if (grid.eta_schedule.empty())
        throw std::invalid_argument("ModeSumGrid: eta_schedule required for mean sums");
    std::vector<double> out;
    out.reserve(grid.eta_schedule.size());
    for (double e : grid.eta_schedule) out.push_back(e / scale_m);
    return out;
}

OracleReport finish_mean_report(std::string quantity, std::string unit,
                                const ExtrapolatedRun& run, double si_scale,
                                double closed_form_si,
                                const std::vector<double>& eta_si) {
    OracleReport r;
    r.quantity = std::move(quantity);
    r.unit = std::move(unit);
    r.value = run.ex.value * si_scale;
    r.closed_form = closed_form_si;
    r.extrapolation_uncertainty = run.ex.uncertainty * std::abs(si_scale);
    for (std::size_t i = 0; i < run.trace_nat.size(); ++i)
        r.convergence_trace.push_back({eta_si[i], run.trace_nat[i].value * si_scale});
    r.relative_error = (closed_form_si != 0.0)
                           ? std::abs(r.value - closed_form_si) / std::abs(closed_form_si)
                           : std::abs(r.value);
    return r;
}

} // namespace

OracleReport mean_energy_modesum(const AtomSpec& atom, double distance_m,
                                 const ModeSumGrid& grid) {
    if (!(distance_m > 0.0))
        throw std::domain_error("mean_energy_modesum: d must be positive");
    grid.validate();
    const double k_max_nat = grid.k_max * distance_m;
    const auto etas = eta_natural(grid, distance_m);
    const auto run = run_eta_schedule(
        [&](double eta) {
            return single_wall_damped(MeanKernel::Energy, eta, grid, k_max_nat);
        },
        etas);
    const Constants& k = constants();
    const double scale = k.hbar * k.c * atom.alpha / std::pow(distance_m, 4);
    return finish_mean_report("mean_energy_single_wall", "J", run, scale,
                              energy_single_wall(atom, distance_m),
                              grid.eta_schedule);
}

OracleReport mean_force_modesum(const AtomSpec& atom, double distance_m,
                                const ModeSumGrid& grid) {
    if (!(distance_m > 0.0))
        throw std::domain_error("mean_force_modesum: d must be positive");
    grid.validate();
    const double k_max_nat = grid.k_max * distance_m;
    const auto etas = eta_natural(grid, distance_m);
    const auto run = run_eta_schedule(
        [&](double eta) {
            return single_wall_damped(MeanKernel::Force, eta, grid, k_max_nat);
        },
        etas);
    const Constants& k = constants();
    const double scale = k.hbar * k.c * atom.alpha / std::pow(distance_m, 5);
    return finish_mean_report("mean_force_single_wall", "N", run, scale,
                              mean_force_single_wall(atom, distance_m).value,
                              grid.eta_schedule);
}

OracleReport two_wall_force_modesum(const AtomSpec& atom, double gap_m,
                                    double offset_m, const ModeSumGrid& grid) {
    validate_geometry(TwoWalls{gap_m, offset_m});
    grid.validate();
    const double zeta = offset_m / gap_m + 0.5;  // height above the lower wall
    const double k_max_nat = grid.k_max * gap_m;
    const auto etas = eta_natural(grid, gap_m);
    const auto run = run_eta_schedule(
        [&](double eta) { return two_wall_damped(zeta, eta, grid, k_max_nat); },
        etas);
    const Constants& k = constants();
    const double scale = k.hbar * k.c * atom.alpha / std::pow(gap_m, 5);
    return finish_mean_report("mean_force_two_walls", "N", run, scale,
                              mean_force_two_walls(atom, gap_m, offset_m).value,
                              grid.eta_schedule);
}

namespace {

/// Node set for one wavevector factor of the variance double integral.
struct VarianceNodes {
    std::vector<double> w;    // quadrature weight x measure k x omega k
    std::vector<double> A;    // kz cos(kz d)
    std::vector<double> B;    // kz sin(kz d)
    std::vector<double> sz;   // sin(kz d)
    std::vector<double> cz;   // cos(kz d)
    std::vector<double> qxx, qyy, qzz;
};

VarianceNodes build_variance_nodes(double x, double k_max_nat, int n_radial,
                                   int n_angular, int panel_order) {
    const double d = 1.0;        // natural length scale
    const double rate = 2.0 * x; // e^{-2 c T (k + k')} per wavevector
    const double kz_max = std::min(k_max_nat, 40.0 / rate);
    const int npanels =
        std::max(8, static_cast<int>(std::ceil(kz_max / (0.5 * M_PI / d))));
    const QuadratureRule t_rule = gauss_legendre(n_radial, 0.0, 1.0);
    const QuadratureRule phi_rule = gauss_legendre(n_angular, 0.0, 0.5 * M_PI);
    const QuadratureRule panel = gauss_legendre(panel_order, 0.0, 1.0);

    VarianceNodes N;
    for (int p = 0; p < npanels; ++p) {
        const double a = p * kz_max / npanels;
        const double wdt = kz_max / npanels;
        for (std::size_t iz = 0; iz < panel.nodes.size(); ++iz) {
            const double kz = a + panel.nodes[iz] * wdt;
            const double wkz = panel.weights[iz] * wdt;
            const double damp = std::exp(-rate * kz) / rate;
            for (std::size_t it = 0; it < t_rule.nodes.size(); ++it) {
                const double k = kz - std::log1p(-t_rule.nodes[it]) / rate;
                const double wk = t_rule.weights[it] * damp;
                const ProjPhiAvg q = phi_averaged_projector(kz, k, phi_rule);
                N.w.push_back(wkz * wk * k * k * alpha_shape(k));
                N.sz.push_back(std::sin(kz * d));
                N.cz.push_back(std::cos(kz * d));
                N.A.push_back(kz * N.cz.back());
                N.B.push_back(kz * N.sz.back());
                N.qxx.push_back(q.xx);
                N.qyy.push_back(q.yy);
                N.qzz.push_back(q.zz);
            }
        }
    }
    return N;
}

double variance_pair_sum(const VarianceNodes& N) {
    const std::size_t n = N.w.size();
    KahanSum outer;
    for (std::size_t i = 0; i < n; ++i) {
        const double Ai = N.A[i], Bi = N.B[i], si = N.sz[i], ci = N.cz[i];
        const double qxi = N.qxx[i], qyi = N.qyy[i], qzi = N.qzz[i];
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double S = Ai * N.sz[j] + N.A[j] * si;
            const double C = Bi * N.cz[j] + N.B[j] * ci;
            acc += N.w[j] * ((qxi * N.qxx[j] + qyi * N.qyy[j]) * S * S +
                             qzi * N.qzz[j] * C * C);
        }
        outer.add(N.w[i] * acc);
    }
    // kernel prefactor 4 = 64 / 16 (mode normalization over transverse average)
    return 2.0 / std::pow(M_PI, 4) * 4.0 * outer.value();
}

double variance_quadrature(double x, double k_max_nat, int n_radial,
                           int n_angular, int panel_order) {
    return variance_pair_sum(
        build_variance_nodes(x, k_max_nat, n_radial, n_angular, panel_order));
}

/// Portable uniform in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct McVector {
    double k, kz, sz, cz;
    PolarizationTensor P;
};

McVector sample_vector(std::mt19937_64& rng, double rate) {
    // k ~ Gamma(4, rate): the k^3 e^{-rate k} factor of the integrand is the
    // sampling density, so it cancels algebraically from the estimator.
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s -= std::log1p(-uniform01(rng));
    const double k = s / rate;
    const double mu = uniform01(rng);
    const double phi = 0.5 * M_PI * uniform01(rng);
    const double kz = k * mu;
    const double kperp = k * std::sqrt(std::max(0.0, 1.0 - mu * mu));
    McVector v;
    v.k = k;
    v.kz = kz;
    v.sz = std::sin(kz);  // d = 1
    v.cz = std::cos(kz);
    v.P = polarization_sum(Vec3{kperp * std::cos(phi), kperp * std::sin(phi), kz});
    return v;
}

double mc_kernel(const McVector& a, const McVector& b) {
    const auto M = oracle_detail::averaged_force_bilinear(a.kz, b.kz, a.kz, b.kz);
    double kern = 0.0;
    kern += a.P(0, 0) * b.P(0, 0) * M.xx;
    kern += a.P(1, 1) * b.P(1, 1) * M.yy;
    kern += a.P(2, 2) * b.P(2, 2) * M.zz;
    return 64.0 * kern * alpha_shape(a.k) * alpha_shape(b.k);
}

struct McResult {
    double variance;      // natural units
    double stderr_var;    // standard error on the variance estimate
    std::vector<ConvergencePoint> trace;  // cumulative estimates (natural)
};

McResult variance_monte_carlo(double x, std::uint64_t samples, std::uint64_t seed) {
    if (samples < 16)
        throw std::invalid_argument("variance_monte_carlo: need at least 16 samples");
    const double rate = 2.0 * x;
    const double prefactor = 18.0 / (M_PI * M_PI * std::pow(rate, 8));
    std::mt19937_64 rng(seed);

    double mean = 0.0, m2 = 0.0;
    McResult out;
    const std::uint64_t quarter = samples / 4;
    for (std::uint64_t n = 1; n <= samples; ++n) {
        const McVector v1 = sample_vector(rng, rate);
        const McVector v2 = sample_vector(rng, rate);
        const double val = mc_kernel(v1, v2);
        const double delta = val - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (val - mean);
        if (quarter > 0 && (n % quarter == 0) && out.trace.size() < 4)
            out.trace.push_back({static_cast<double>(n), prefactor * mean});
    }
    out.variance = prefactor * mean;
    const double var_of_mean = m2 / (static_cast<double>(samples) - 1.0) /
                               static_cast<double>(samples);
    out.stderr_var = prefactor * std::sqrt(var_of_mean);
    return out;
}

} // namespace

OracleReport variance_modesum(const AtomSpec& atom, double distance_m,
                              const MeasurementWindow& window,
                              const ModeSumGrid& grid, double tolerance) {
    if (!(distance_m > 0.0))
        throw std::domain_error("variance_modesum: d must be positive");
    if (window.kind != ResponseKind::Lorentzian)
        throw std::invalid_argument("variance_modesum: Lorentzian window only");
    grid.validate();

    const Constants& kc = constants();
    const double x = kc.c * window.integration_time / distance_m;
    const double force_scale = kc.hbar * kc.c * atom.alpha / std::pow(distance_m, 5);

    OracleReport r;
    r.quantity = "force_std_single_wall";
    r.unit = "N";
    r.closed_form = force_std_single_wall(atom, distance_m, window);

    if (grid.mc_samples) {
        const McResult mc = variance_monte_carlo(x, *grid.mc_samples, grid.seed);
        if (mc.stderr_var > tolerance * mc.variance)
            throw OracleError(
                "variance Monte Carlo standard error " +
                    std::to_string(mc.stderr_var / mc.variance) +
                    " (relative) exceeds half the tolerance on the std; "
                    "increase mc_samples",
                mc.trace);
        r.value = std::sqrt(mc.variance) * force_scale;
        // relative error on std is half the relative error on the variance
        r.statistical_error = 0.5 * (mc.stderr_var / mc.variance) * r.value;
        for (const auto& p : mc.trace)
            r.convergence_trace.push_back(
                {p.refinement, std::sqrt(std::max(0.0, p.value)) * force_scale});
    } else {
        const std::array<double, 3> factors{0.25, 0.5, 1.0};
        double last = 0.0;
        for (double f : factors) {
            const int nr = std::max(8, static_cast<int>(grid.n_radial * f));
            const int na = std::max(8, static_cast<int>(grid.n_angular * f));
            const int po = std::max(3, static_cast<int>(6 * f));
            last = variance_quadrature(x, grid.k_max * distance_m, nr, na, po);
            r.convergence_trace.push_back({f, std::sqrt(std::max(0.0, last)) * force_scale});
        }
        r.value = std::sqrt(std::max(0.0, last)) * force_scale;
        if (r.convergence_trace.size() >= 2) {
            const auto& t = r.convergence_trace;
            r.extrapolation_uncertainty =
                std::abs(t.back().value - t[t.size() - 2].value);
        }
    }
    r.relative_error = std::abs(r.value - r.closed_form) / r.closed_form;
    return r;
}

} // namespace cpfluct
