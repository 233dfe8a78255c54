// Command-line surface: single evaluations, sweeps, crossover search,
// experiment observability reports, and oracle verification runs.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/validation error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpfluct/atom.hpp"
#include "cpfluct/fluctuation.hpp"
#include "cpfluct/mean_force.hpp"
#include "cpfluct/oracle.hpp"
#include "cpfluct/units.hpp"

using nlohmann::json;
using namespace cpfluct;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct OutputSink {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw std::invalid_argument("cannot open output file: " + path);
        out << text;
    }
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json base_report(const std::string& subcommand) {
    json j;
    j["tool"] = "cpfluct";
    j["unit_convention"] = unit_convention();
    j["subcommand"] = subcommand;
    return j;
}

void print_banner(std::ostream& os) {
    os << "# unit convention: " << unit_convention()
       << " (polarizability alpha is a volume in m^3; hbar*c*alpha/d^5 is a force)\n";
}

struct AtomOptions {
    std::optional<double> alpha;
    std::string convention = "gaussian";
    std::optional<double> omega0;
    std::string config_path;
    std::optional<double> mass_kg;  // filled from config, used by experiment

    void add_to(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha,
                        "static polarizability (m^3 gaussian, or SI with "
                        "--alpha-convention si)");
        cmd->add_option("--alpha-convention", convention, "gaussian|si")
            ->check(CLI::IsMember({"gaussian", "si"}));
        cmd->add_option("--omega0", omega0, "transition frequency (rad/s)");
        cmd->add_option("--config", config_path, "species config JSON file");
    }

    AtomSpec resolve() {
        std::optional<AtomSpec> from_config;
        if (!config_path.empty()) {
            SpeciesConfig cfg = load_species_file(config_path);
            from_config = cfg.atom;
            mass_kg = cfg.mass_kg;
        }
        if (alpha) {
            const auto conv = (convention == "si") ? AlphaConvention::SI
                                                   : AlphaConvention::Gaussian;
            return make_atom(*alpha, conv, omega0,
                             from_config ? from_config->label : "");
        }
        if (from_config) {
            if (omega0) from_config->omega0 = omega0;
            return *from_config;
        }
        throw std::invalid_argument("no atom given: pass --alpha or --config");
    }
};

void emit_far_zone_note(std::ostream& os, const AtomSpec& atom, double d) {
    const FarZoneResult fz = far_zone_check(atom, d);
    if (fz.verdict == FarZone::Unknown) {
        os << "# far-zone check: unknown (no omega0 given)\n";
    } else {
        os << "# far-zone check: d*omega0/c = " << format_double(*fz.margin_ratio)
           << (fz.verdict == FarZone::Yes
                   ? " (far zone)\n"
                   : " (WARNING: below threshold 10; the static-alpha law is "
                     "asymptotic here)\n");
    }
}

json force_value_json(const ForceValue& f) {
    return json{{"value_N", f.value},
                {"log_magnitude", f.log_magnitude},
                {"sign", f.sign}};
}

// ---------------------------------------------------------------- force ---
struct ForceArgs {
    AtomOptions atom;
    bool single = false, two_walls = false;
    double distance = 0.0, gap = 0.0, offset = 0.0;
    bool as_json = false;
    OutputSink sink;
};

int cmd_force(ForceArgs& a) {
    const AtomSpec atom = a.atom.resolve();
    std::ostringstream os;
    os.imbue(std::locale::classic());
    json rep = base_report("force");
    if (a.single == a.two_walls)
        throw std::invalid_argument("pick exactly one of --single / --two-walls");

    if (a.single) {
        validate_geometry(SingleWall{a.distance});
        const ForceValue f = mean_force_single_wall(atom, a.distance);
        rep["inputs"] = {{"geometry", "single-wall"},
                         {"distance_m", a.distance},
                         {"alpha_m3", atom.alpha}};
        rep["results"] = {{"mean_force", force_value_json(f)},
                          {"natural_value", natural::mean_force_single_wall(1.0)},
                          {"natural_length_scale_m", a.distance},
                          {"direction", "toward the wall (attractive)"}};
        if (!a.as_json) {
            print_banner(os);
            emit_far_zone_note(os, atom, a.distance);
            os << "geometry        : single wall, d = " << format_double(a.distance) << " m\n"
               << "mean force      : " << format_double(f.value) << " N (attractive)\n"
               << "log10 |F/N|     : " << format_double(f.log_magnitude / std::log(10.0)) << "\n"
               << "natural value   : " << format_double(natural::mean_force_single_wall(1.0))
               << "  (hbar=c=alpha=1, lengths in units of d)\n";
        }
    } else {
        validate_geometry(TwoWalls{a.gap, a.offset});
        const ForceValue f = mean_force_two_walls(atom, a.gap, a.offset);
        rep["inputs"] = {{"geometry", "two-walls"},
                         {"gap_m", a.gap},
                         {"offset_m", a.offset},
                         {"alpha_m3", atom.alpha}};
        rep["results"] = {{"mean_force", force_value_json(f)},
                          {"natural_value", natural::mean_force_two_walls(1.0, a.offset / a.gap)},
                          {"natural_length_scale_m", a.gap},
                          {"direction", f.sign == 0
                                            ? "zero (midplane, by symmetry)"
                                            : "toward the nearer wall"}};
        if (!a.as_json) {
            print_banner(os);
            os << "geometry        : two walls, L = " << format_double(a.gap)
               << " m, offset d = " << format_double(a.offset) << " m\n"
               << "mean force      : " << format_double(f.value) << " N"
               << (f.sign == 0 ? " (zero at midplane by symmetry)"
                               : " (toward the nearer wall)")
               << "\n"
               << "natural value   : "
               << format_double(natural::mean_force_two_walls(1.0, a.offset / a.gap))
               << "  (hbar=c=alpha=1, lengths in units of L)\n";
        }
    }
    a.sink.write(a.as_json ? rep.dump(2) + "\n" : os.str());
    return kExitOk;
}

// ---------------------------------------------------------------- fluct ---
struct FluctArgs {
    AtomOptions atom;
    bool single = false, two_walls = false;
    double distance = 0.0, gap = 0.0, offset = 0.0;
    double time = 0.0;
    bool as_json = false;
    OutputSink sink;
};

std::string regime_label(double x) {
    if (x >= 10.0) return "small_d";   // d << cT
    if (x <= 0.1) return "large_d";    // d >> cT
    return "intermediate";
}

int cmd_fluct(FluctArgs& a) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    json rep = base_report("fluct");
    if (a.single == a.two_walls)
        throw std::invalid_argument("pick exactly one of --single / --two-walls");
    const MeasurementWindow w{a.time};

    if (a.single) {
        const AtomSpec atom = a.atom.resolve();
        validate_geometry(SingleWall{a.distance});
        const double x = constants().c * a.time / a.distance;
        const FluctStats s = relative_fluct_single_wall(atom, a.distance, w);
        const double cT = constants().c * a.time;
        const double asym_small = asymptotic_relative(FluctRegime::SmallDistance, a.distance, cT);
        const double asym_large = asymptotic_relative(FluctRegime::LargeDistance, a.distance, cT);
        rep["inputs"] = {{"geometry", "single-wall"},
                         {"distance_m", a.distance},
                         {"time_s", a.time},
                         {"alpha_m3", atom.alpha}};
        rep["results"] = {{"std_N", *s.std},
                          {"relative", s.relative},
                          {"log_relative", s.log_relative},
                          {"x_cT_over_d", x},
                          {"regime", regime_label(x)},
                          {"asym_small_d", asym_small},
                          {"asym_large_d", asym_large}};
        if (!a.as_json) {
            print_banner(os);
            os << "x = cT/d        : " << format_double(x) << "  (" << regime_label(x) << ")\n"
               << "force std       : " << format_double(*s.std) << " N\n"
               << "relative fluct  : " << format_double(s.relative) << "\n"
               << "asymptote d<<cT : " << format_double(asym_small) << "\n"
               << "asymptote d>>cT : " << format_double(asym_large) << "\n";
        }
    } else {
        validate_geometry(TwoWalls{a.gap, a.offset});
        const FluctStats s = relative_fluct_two_walls(a.gap, a.offset, w);
        const double x_gap = constants().c * a.time / a.gap;
        rep["inputs"] = {{"geometry", "two-walls"},
                         {"gap_m", a.gap},
                         {"offset_m", a.offset},
                         {"time_s", a.time}};
        rep["results"] = {{"log_relative", s.log_relative},
                          {"relative", s.relative},
                          {"underflowed", s.underflowed},
                          {"cT_over_L", x_gap},
                          {"asymptotic_valid", s.asymptotic_valid}};
        if (!a.as_json) {
            print_banner(os);
            os << "cT/L            : " << format_double(x_gap) << "\n"
               << "log relative    : " << format_double(s.log_relative) << "\n";
            if (s.underflowed)
                os << "relative fluct  : underflow, see log field\n";
            else
                os << "relative fluct  : " << format_double(s.relative) << "\n";
            if (!s.asymptotic_valid)
                os << "# WARNING: cT/L < 10; the simplified expression is outside its "
                      "asymptotic validity\n";
        }
    }
    a.sink.write(a.as_json ? rep.dump(2) + "\n" : os.str());
    return kExitOk;
}

// ----------------------------------------------------------------- scan ---
struct ScanArgs {
    AtomOptions atom;
    std::string param;  // distance | time
    double min = 0.0, max = 0.0;
    int points = 0;
    std::string spacing = "log";
    double fixed_distance = 0.0, fixed_time = 0.0;
    std::string format = "csv";
    OutputSink sink;
};

int cmd_scan(ScanArgs& a) {
    const AtomSpec atom = a.atom.resolve();
    if (a.points < 1) throw std::invalid_argument("scan: --points must be >= 1");
    if (!(a.min > 0.0) || !(a.max >= a.min))
        throw std::invalid_argument("scan: need 0 < min <= max");
    if (a.param != "distance" && a.param != "time")
        throw std::invalid_argument("scan: --param must be distance or time");
    if (a.param == "distance" && !(a.fixed_time > 0.0))
        throw std::invalid_argument("scan over distance: --time required");
    if (a.param == "time" && !(a.fixed_distance > 0.0))
        throw std::invalid_argument("scan over time: --distance required");

    std::vector<double> grid(static_cast<std::size_t>(a.points));
    for (int i = 0; i < a.points; ++i) {
        const double f = (a.points == 1) ? 0.0 : static_cast<double>(i) / (a.points - 1);
        grid[static_cast<std::size_t>(i)] =
            (a.spacing == "log") ? a.min * std::pow(a.max / a.min, f)
                                 : a.min + (a.max - a.min) * f;
    }

    struct Row {
        double param, force, std, relative, asym_s, asym_l;
        std::string regime;
    };
    std::vector<Row> rows;
    rows.reserve(grid.size());
    for (double p : grid) {
        const double d = (a.param == "distance") ? p : a.fixed_distance;
        const double T = (a.param == "time") ? p : a.fixed_time;
        const MeasurementWindow w{T};
        const double cT = constants().c * T;
        Row r;
        r.param = p;
        r.force = mean_force_single_wall(atom, d).value;
        r.std = force_std_single_wall(atom, d, w);
        r.relative = relative_fluct_single_wall(atom, d, w).relative;
        r.asym_s = asymptotic_relative(FluctRegime::SmallDistance, d, cT);
        r.asym_l = asymptotic_relative(FluctRegime::LargeDistance, d, cT);
        r.regime = regime_label(cT / d);
        rows.push_back(r);
    }

    if (a.format == "csv") {
        std::ostringstream os;
        os.imbue(std::locale::classic());
        os << "param,mean_force_N,std_N,relative,asym_small_d,asym_large_d,regime\n";
        for (const Row& r : rows)
            os << format_double(r.param) << ',' << format_double(r.force) << ','
               << format_double(r.std) << ',' << format_double(r.relative) << ','
               << format_double(r.asym_s) << ',' << format_double(r.asym_l) << ','
               << r.regime << '\n';
        a.sink.write(os.str());
    } else {
        json rep = base_report("scan");
        rep["inputs"] = {{"param", a.param}, {"min", a.min},    {"max", a.max},
                         {"points", a.points}, {"spacing", a.spacing}};
        auto& arr = rep["results"] = json::array();
        for (const Row& r : rows)
            arr.push_back({{"param", r.param},
                           {"mean_force_N", r.force},
                           {"std_N", r.std},
                           {"relative", r.relative},
                           {"asym_small_d", r.asym_s},
                           {"asym_large_d", r.asym_l},
                           {"regime", r.regime}});
        a.sink.write(rep.dump(2) + "\n");
    }
    return kExitOk;
}

// ------------------------------------------------------------ crossover ---
struct CrossoverArgs {
    double distance = 0.0;
    bool as_json = false;
    OutputSink sink;
};

int cmd_crossover(CrossoverArgs& a) {
    if (!(a.distance > 0.0))
        throw std::invalid_argument("crossover: --distance must be positive");
    const CrossoverResult r = crossover_time(a.distance);
    json rep = base_report("crossover");
    rep["inputs"] = {{"distance_m", a.distance}};
    rep["results"] = {{"time_s", r.time},
                      {"residual", r.residual},
                      {"x_cT_over_d", r.x_ratio},
                      {"d_over_cT", 1.0 / r.x_ratio},
                      {"estimate_small_branch_s", r.estimate_small_branch},
                      {"estimate_large_branch_s", r.estimate_large_branch}};
    if (a.as_json) {
        a.sink.write(rep.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os.imbue(std::locale::classic());
        print_banner(os);
        os << "crossover T*     : " << format_double(r.time) << " s (relative fluctuation = 1)\n"
           << "residual         : " << format_double(r.residual) << "\n"
           << "x = cT*/d        : " << format_double(r.x_ratio)
           << "   d/cT* = " << format_double(1.0 / r.x_ratio) << "\n"
           << "branch estimates : d<<cT " << format_double(r.estimate_small_branch)
           << " s, d>>cT " << format_double(r.estimate_large_branch) << " s\n";
        a.sink.write(os.str());
    }
    return kExitOk;
}

// ----------------------------------------------------------- experiment ---
struct ExperimentArgs {
    AtomOptions atom;
    double cavity_length = 0.0;
    std::optional<double> speed;
    std::optional<double> mass;
    std::optional<double> temperature;
    double gap = 0.0;
    bool as_json = false;
    OutputSink sink;
};

int cmd_experiment(ExperimentArgs& a) {
    if (!(a.cavity_length > 0.0))
        throw std::invalid_argument("experiment: --cavity-length must be positive");
    if (!(a.gap > 0.0))
        throw std::invalid_argument("experiment: --gap must be positive");
    if (!a.atom.config_path.empty()) {
        SpeciesConfig cfg = load_species_file(a.atom.config_path);
        if (!a.mass && cfg.mass_kg) a.mass = cfg.mass_kg;
    }
    double speed;
    if (a.speed) {
        speed = *a.speed;
    } else if (a.mass && a.temperature) {
        speed = mb_mean_speed(*a.mass, *a.temperature);
    } else {
        throw std::invalid_argument(
            "experiment: give --speed, or --mass and --temperature (mass may "
            "come from --config)");
    }
    const double T = transit_time(a.cavity_length, speed);
    const MeasurementWindow w{T};
    const double cT = constants().c * T;

    // log-space threshold where the relative fluctuation crosses 1; for
    // |d| << L the geometry factor is -ln(8 pi |d| / L)
    const double base_log = -M_PI * cT / a.gap - 2.5 * std::log(2.0 * M_PI * cT / a.gap);
    const double ln_d_threshold = base_log + std::log(a.gap / (8.0 * M_PI));

    const double probe = 1e-10;  // Bohr-radius scale probe offset
    const FluctStats at_probe = relative_fluct_two_walls(a.gap, probe, w);

    json sweep = json::array();
    const int npts = 25;
    for (int i = 0; i < npts; ++i) {
        const double f = static_cast<double>(i) / (npts - 1);
        const double off = 1e-12 * std::pow((0.49 * a.gap) / 1e-12, f);
        const FluctStats s = relative_fluct_two_walls(a.gap, off, w);
        sweep.push_back({{"offset_m", off}, {"log_relative", s.log_relative}});
    }

    const bool negligible = at_probe.log_relative < -30.0;
    json rep = base_report("experiment");
    rep["inputs"] = {{"cavity_length_m", a.cavity_length},
                     {"gap_m", a.gap},
                     {"mean_speed_m_s", speed}};
    if (a.mass) rep["inputs"]["mass_kg"] = *a.mass;
    if (a.temperature) rep["inputs"]["temperature_K"] = *a.temperature;
    rep["results"] = {
        {"integration_time_s", T},
        {"cT_over_L", cT / a.gap},
        {"log_relative_at_1e-10_m", at_probe.log_relative},
        {"ln_offset_where_relative_exceeds_1", ln_d_threshold},
        {"log10_offset_where_relative_exceeds_1", ln_d_threshold / std::log(10.0)},
        {"verdict", negligible ? "fluctuation hardly observable at this integration time"
                               : "fluctuation may be observable"},
        {"offset_sweep", sweep}};

    if (a.as_json) {
        a.sink.write(rep.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os.imbue(std::locale::classic());
        print_banner(os);
        os << "mean speed          : " << format_double(speed) << " m/s\n"
           << "integration time T  : " << format_double(T) << " s (transit)\n"
           << "cT/L                : " << format_double(cT / a.gap) << "\n"
           << "log rel @ d=1e-10 m : " << format_double(at_probe.log_relative)
           << "  (already negligible at the Bohr-radius scale)\n"
           << "relative > 1 only for ln(|d|/m) < " << format_double(ln_d_threshold)
           << "  (log10 " << format_double(ln_d_threshold / std::log(10.0)) << ")\n"
           << "verdict             : "
           << (negligible ? "fluctuation hardly observable at this integration time"
                          : "fluctuation may be observable")
           << "\n";
        a.sink.write(os.str());
    }
    return kExitOk;
}

// --------------------------------------------------------------- verify ---
struct VerifyArgs {
    AtomOptions atom;
    std::string suite;
    std::optional<double> tolerance;
    std::optional<std::uint64_t> mc_samples;
    std::uint64_t seed = 0;
    bool as_json = false;
    OutputSink sink;
};

int cmd_verify(VerifyArgs& a) {
    const std::vector<std::string> known{"mean-energy", "mean-force", "variance",
                                         "two-wall", "all"};
    if (std::find(known.begin(), known.end(), a.suite) == known.end())
        throw std::invalid_argument("verify: unknown suite '" + a.suite +
                                    "' (mean-energy|mean-force|variance|two-wall|all)");
    AtomSpec atom{1e-29, std::nullopt, "verify-scale"};
    if (a.atom.alpha || !a.atom.config_path.empty()) atom = a.atom.resolve();

    const double d = 1e-6;   // canonical scales; relative errors are scale-free
    const double L = 1e-6;
    const double tol_mean = a.tolerance.value_or(0.01);
    const double tol_var = a.tolerance.value_or(0.02);

    struct Case {
        std::string name;
        OracleReport report;
        double tolerance;
        bool absolute = false;  // compare |value| against tolerance * reference
        double reference = 0.0;
        bool pass = false;
    };
    std::vector<Case> cases;

    const bool want_all = (a.suite == "all");
    if (want_all || a.suite == "mean-energy") {
        Case c{"mean-energy d=1um",
               mean_energy_modesum(atom, d, ModeSumGrid::default_single_wall(d)),
               tol_mean};
        cases.push_back(std::move(c));
    }
    if (want_all || a.suite == "mean-force") {
        Case c{"mean-force d=1um",
               mean_force_modesum(atom, d, ModeSumGrid::default_single_wall(d)),
               tol_mean};
        cases.push_back(std::move(c));
    }
    if (want_all || a.suite == "variance") {
        for (double x : {0.1, 1.0, 10.0}) {
            ModeSumGrid g = ModeSumGrid::default_variance();
            if (a.mc_samples) {
                g.mc_samples = a.mc_samples;
                g.seed = a.seed;
            }
            const MeasurementWindow w{x * d / constants().c};
            Case c{"variance x=" + format_double(x),
                   variance_modesum(atom, d, w, g, tol_var), tol_var};
            cases.push_back(std::move(c));
        }
    }
    if (want_all || a.suite == "two-wall") {
        Case c1{"two-wall d=L/4",
                two_wall_force_modesum(atom, L, 0.25 * L, ModeSumGrid::default_two_walls(L)),
                tol_mean};
        cases.push_back(std::move(c1));
        Case c0{"two-wall d=0 (symmetry zero)",
                two_wall_force_modesum(atom, L, 0.0, ModeSumGrid::default_two_walls(L)),
                tol_mean};
        c0.absolute = true;
        c0.reference = std::abs(mean_force_two_walls(atom, L, 0.25 * L).value);
        cases.push_back(std::move(c0));
    }

    bool all_pass = true;
    json rep = base_report("verify");
    rep["inputs"] = {{"suite", a.suite}, {"alpha_m3", atom.alpha}};
    auto& arr = rep["results"] = json::array();
    std::ostringstream os;
    os.imbue(std::locale::classic());
    print_banner(os);
    for (Case& c : cases) {
        c.pass = c.absolute ? (std::abs(c.report.value) <= c.tolerance * c.reference)
                            : (c.report.relative_error <= c.tolerance);
        all_pass = all_pass && c.pass;
        json jc = c.report.to_json();
        jc["case"] = c.name;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        arr.push_back(jc);
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": oracle "
           << format_double(c.report.value) << " " << c.report.unit << ", closed form "
           << format_double(c.report.closed_form) << ", relative error "
           << format_double(c.report.relative_error) << " (tolerance "
           << format_double(c.tolerance) << ")\n";
    }
    rep["all_pass"] = all_pass;
    a.sink.write(a.as_json ? rep.dump(2) + "\n" : os.str());
    if (!all_pass) {
        // repeat the worst offender on stderr
        const auto worst = std::max_element(
            cases.begin(), cases.end(), [](const Case& x, const Case& y) {
                return x.report.relative_error < y.report.relative_error;
            });
        std::cerr << "verification failed; worst case: " << worst->name
                  << " relative error " << format_double(worst->report.relative_error)
                  << "\n";
    }
    return all_pass ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Casimir-Polder mean force and quantum fluctuation calculator "
        "(closed forms plus brute-force spectral verification)"};
    app.require_subcommand(1);

    ForceArgs force_args;
    auto* force = app.add_subcommand("force", "mean Casimir-Polder force");
    force->add_flag("--single", force_args.single, "single wall geometry");
    force->add_flag("--two-walls", force_args.two_walls, "two parallel walls");
    force->add_option("--distance", force_args.distance, "atom-wall distance (m)");
    force->add_option("--gap", force_args.gap, "wall separation L (m)");
    force->add_option("--offset", force_args.offset, "offset d from the midplane (m)");
    force->add_flag("--json", force_args.as_json, "emit a JSON report");
    force->add_option("--output", force_args.sink.path, "write to file instead of stdout");
    force_args.atom.add_to(force);

    FluctArgs fluct_args;
    auto* fluct = app.add_subcommand("fluct", "force fluctuation for a finite measurement");
    fluct->add_flag("--single", fluct_args.single, "single wall geometry");
    fluct->add_flag("--two-walls", fluct_args.two_walls, "two parallel walls");
    fluct->add_option("--distance", fluct_args.distance, "atom-wall distance (m)");
    fluct->add_option("--gap", fluct_args.gap, "wall separation L (m)");
    fluct->add_option("--offset", fluct_args.offset, "offset d from the midplane (m)");
    fluct->add_option("--time", fluct_args.time, "integration time T (s)")->required();
    fluct->add_flag("--json", fluct_args.as_json, "emit a JSON report");
    fluct->add_option("--output", fluct_args.sink.path, "write to file instead of stdout");
    fluct_args.atom.add_to(fluct);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "parameter sweep (single wall), CSV/JSON table");
    scan->add_option("--param", scan_args.param, "distance|time")->required();
    scan->add_option("--min", scan_args.min, "sweep start")->required();
    scan->add_option("--max", scan_args.max, "sweep end")->required();
    scan->add_option("--points", scan_args.points, "grid size")->required();
    scan->add_option("--spacing", scan_args.spacing, "log|linear")
        ->check(CLI::IsMember({"log", "linear"}));
    scan->add_option("--distance", scan_args.fixed_distance, "fixed d for time sweeps (m)");
    scan->add_option("--time", scan_args.fixed_time, "fixed T for distance sweeps (s)");
    scan->add_option("--format", scan_args.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--output", scan_args.sink.path, "write to file instead of stdout");
    scan_args.atom.add_to(scan);

    CrossoverArgs cross_args;
    auto* cross = app.add_subcommand("crossover",
                                     "measurement time where the relative fluctuation is 1");
    cross->add_option("--distance", cross_args.distance, "atom-wall distance (m)")->required();
    cross->add_flag("--json", cross_args.as_json, "emit a JSON report");
    cross->add_option("--output", cross_args.sink.path, "write to file instead of stdout");

    ExperimentArgs exp_args;
    auto* exper = app.add_subcommand(
        "experiment", "observability of the two-wall fluctuation for a beam transit");
    exper->add_option("--cavity-length", exp_args.cavity_length, "cavity length (m)")->required();
    exper->add_option("--speed", exp_args.speed, "mean atom speed (m/s)");
    exper->add_option("--mass", exp_args.mass, "atom mass (kg)");
    exper->add_option("--temperature", exp_args.temperature, "oven temperature (K)");
    exper->add_option("--gap", exp_args.gap, "wall separation L (m)")->required();
    exper->add_flag("--json", exp_args.as_json, "emit a JSON report");
    exper->add_option("--output", exp_args.sink.path, "write to file instead of stdout");
    exp_args.atom.add_to(exper);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run oracle comparisons against closed forms");
    verify->add_option("--suite", verify_args.suite,
                       "mean-energy|mean-force|variance|two-wall|all")->required();
    verify->add_option("--tolerance", verify_args.tolerance, "relative tolerance override");
    verify->add_option("--mc-samples", verify_args.mc_samples,
                       "use Monte Carlo for the variance with this many samples");
    verify->add_option("--seed", verify_args.seed, "Monte Carlo seed");
    verify->add_flag("--json", verify_args.as_json, "emit a JSON report");
    verify->add_option("--output", verify_args.sink.path, "write to file instead of stdout");
    verify_args.atom.add_to(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (force->parsed()) return cmd_force(force_args);
        if (fluct->parsed()) return cmd_fluct(fluct_args);
        if (scan->parsed()) return cmd_scan(scan_args);
        if (cross->parsed()) return cmd_crossover(cross_args);
        if (exper->parsed()) return cmd_experiment(exp_args);
        if (verify->parsed()) return cmd_verify(verify_args);
    } catch (const OracleError& e) {
        std::cerr << "oracle error: " << e.what() << "\n";
        return kExitVerifyFailed;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
