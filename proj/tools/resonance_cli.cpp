#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>

#include "resonance/geometry.hpp"
#include "resonance/image_series.hpp"
#include "resonance/kernel.hpp"
#include "resonance/observables.hpp"
#include "resonance/oracle.hpp"
#include "resonance/sweep.hpp"
#include "resonance/units.hpp"

using namespace resonance;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;

double to_double(const std::string& flag, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0')
        throw GeometryError(std::vector<GeometryIssue>{{flag, "not a number: '" + text + "'"}});
    return v;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct PointArgs {
    std::string orientation = "perp";
    std::string d = "0.5", z0 = "0.3", L = "1.2", a = "4";
    double theta = 3.0 * std::numbers::pi / 4.0;
    double lambda = 1.0;
    double tol = 1e-10;
    std::string model = "two-mirror";
};

void add_point_flags(CLI::App* cmd, PointArgs& p) {
    cmd->add_option("--orientation", p.orientation, "perp or par")->check(CLI::IsMember({"perp", "par"}));
    cmd->add_option("--d", p.d, "reduced interatomic distance omega0 d");
    cmd->add_option("--z0", p.z0, "reduced atom-plate distance omega0 z0 (inf allowed)");
    cmd->add_option("--L", p.L, "reduced plate separation omega0 L (inf allowed)");
    cmd->add_option("--a", p.a, "reduced acceleration a / omega0");
    cmd->add_option("--theta", p.theta, "entanglement angle in [0, pi]");
    cmd->add_option("--lambda", p.lambda, "coupling constant");
    cmd->add_option("--tol", p.tol, "certified truncation tolerance");
    cmd->add_option("--model", p.model, "two-mirror, single-mirror, free-space or low-acc");
}

GeometryConfig point_geometry(const PointArgs& p) {
    GeometryConfig g;
    g.orientation = parse_orientation(p.orientation);
    g.d = to_double("d", p.d);
    g.z0 = to_double("z0", p.z0);
    g.L = to_double("L", p.L);
    g.a = to_double("a", p.a);
    return g;
}

int eval_point(Quantity q, const PointArgs& p) {
    const Observable obs{q, parse_model(p.model)};
    GeometryConfig g = point_geometry(p);
    // The closed-form limits do not use the far plate (or, for free space, either plate).
    if (obs.model == Model::SingleMirror || obs.model == Model::FreeSpace) g.L = kInfinity;
    if (obs.model == Model::FreeSpace) g.z0 = kInfinity;
    const ValidatedConfig cfg = validate(g);
    const AtomState state{p.theta, p.lambda};
    check_state(state);
    SeriesOptions opts;
    opts.tol = p.tol;
    const ObservableValue v = evaluate(obs, cfg, opts);
    std::cout << "quantity=" << to_string(q) << " model=" << to_string(obs.model)
              << " orientation=" << to_string(g.orientation) << " d=" << num(g.d) << " z0=" << num(g.z0)
              << " L=" << num(g.L) << " a=" << num(g.a) << " theta=" << num(p.theta) << " lambda=" << num(p.lambda)
              << " reduced_value=" << num(v.reduced_value) << " normalized_value=" << num(normalized_value(v, state))
              << " unit=" << (v.unit == Prefactor::ShiftUnit ? "lambda^2*omega0/(16*pi)" : "lambda^2*omega0^2/(8*pi)")
              << " tail_bound=" << num(v.tail_bound) << " n_max=" << v.n_max
              << " converged=" << (v.converged ? "true" : "false")
              << " regime_warning=" << (v.regime_warning ? "true" : "false") << '\n';
    return 0;
}

int run_sweep_file(const std::string& spec_path, const std::string& out) {
    RunSpec spec = load_runspec(spec_path);
    if (!out.empty()) spec.output = out;
    if (spec.output.empty()) spec.output = "sweep.csv";
    write_csv_file(spec.output, spec, run_sweep(spec));
    std::cout << spec.output << '\n';
    return 0;
}

int run_figure(const std::string& name, const std::string& dir) {
    for (const RunSpec& spec : figure_preset(name)) {
        const std::filesystem::path path = std::filesystem::path(dir) / spec.output;
        write_csv_file(path, spec, run_sweep(spec));
        std::cout << path.string() << '\n';
    }
    return 0;
}

struct EstimateArgs {
    units::PhysicalScenario s;
};

int run_estimate(const units::PhysicalScenario& s) {
    const units::Section4Estimate e = units::section4_estimate(s);
    std::printf("omega0_eV=%.17g L_nm=%.17g d_nm=%.17g z0_nm=%.17g a_SI=%.17g lambda=%.17g theta=%.17g\n",
                s.omega0_eV, s.L_nm, s.d_nm, s.z0_nm, s.a_SI, s.lambda, s.theta);
    std::printf("reduced_a=%.6e a2_coefficient=%.17g\n", e.reduced_a, e.reduced_a2_coefficient);
    std::printf("shift_eV=%.17g\n", e.shift_eV);
    std::printf("acceleration_correction_eV=%.6e\n", e.acceleration_correction_eV);
    std::printf("regime_warning=%s\n", e.regime_warning ? "true" : "false");
    std::printf("claimed_order_eV=%.0e orders_of_magnitude_off=%.2f\n", e.claimed_order_eV, e.orders_of_magnitude_off);
    if (std::abs(e.orders_of_magnitude_off) >= 1.0)
        std::printf("note: the computed correction differs from the claimed order of magnitude by %.1f decades\n",
                    e.orders_of_magnitude_off);
    return 0;
}

struct OracleArgs {
    PointArgs point;
    std::string kind = "cos";
    std::string method = "brute";
    double n_max = 1e6;
    int digits = 50;
    double z = 1.0;
    std::string cache;
};

int run_oracle(const OracleArgs& o) {
    const KernelKind kind = o.kind == "sin" ? KernelKind::Sine : KernelKind::Cosine;
    oracle::OracleReport report;
    std::string inputs;
    if (o.method == "kernel") {
        report = oracle::kernel_oracle(kind, o.z, to_double("a", o.point.a), o.digits);
    } else {
        const ValidatedConfig cfg = validate(point_geometry(o.point));
        std::function<oracle::OracleReport()> compute;
        if (o.method == "brute") {
            const auto n = static_cast<std::int64_t>(o.n_max);
            inputs = oracle::brute_force_key(kind, cfg, n, o.digits);
            compute = [&] {
                oracle::BruteForceOptions opts;
                opts.precision_digits = o.digits;
                return oracle::brute_force_sum(kind, cfg, n, opts);
            };
        } else {
            oracle::LimitOptions opts;
            opts.precision_digits = o.digits;
            inputs = oracle::limit_key(kind, cfg, opts);
            compute = [&, opts] { return oracle::limit_sum(kind, cfg, opts); };
        }
        report = o.cache.empty() ? compute() : oracle::OracleCache(o.cache).get_or_compute(inputs, compute);
    }
    std::cout << "method=" << oracle::to_string(report.method) << " n_max_used=" << report.n_max_used
              << " precision_digits=" << report.precision_digits << " value=" << report.value << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonance shift and relaxation rate of two accelerated entangled atoms between mirrors"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("resonance ") + RESONANCE_VERSION);

    PointArgs shift_args, rate_args;
    auto* shift_cmd = app.add_subcommand("shift", "resonance energy shift at one parameter point");
    add_point_flags(shift_cmd, shift_args);
    auto* rate_cmd = app.add_subcommand("rate", "relaxation rate at one parameter point");
    add_point_flags(rate_cmd, rate_args);

    std::string spec_path, sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a declarative parameter sweep and write CSV");
    sweep_cmd->add_option("spec", spec_path, "RunSpec file")->required();
    sweep_cmd->add_option("--out", sweep_out, "output CSV path (overrides the spec)");

    std::string figure_name, figure_dir = ".";
    auto* figure_cmd = app.add_subcommand("figure", "write the CSVs of a figure preset");
    figure_cmd->add_option("name", figure_name, "fig3, fig4, fig5, fig6 or fig7")->required();
    figure_cmd->add_option("--out", figure_dir, "output directory");

    units::PhysicalScenario scenario;
    std::string scenario_orientation = "perp";
    auto* estimate_cmd = app.add_subcommand("estimate", "small-acceleration estimate in laboratory units");
    estimate_cmd->add_option("--omega0", scenario.omega0_eV, "transition energy in eV");
    estimate_cmd->add_option("--L", scenario.L_nm, "plate separation in nm");
    estimate_cmd->add_option("--d", scenario.d_nm, "interatomic distance in nm");
    estimate_cmd->add_option("--z0", scenario.z0_nm, "atom-plate distance in nm");
    estimate_cmd->add_option("--a", scenario.a_SI, "proper acceleration in m/s^2");
    estimate_cmd->add_option("--lambda", scenario.lambda, "coupling constant");
    estimate_cmd->add_option("--theta", scenario.theta, "entanglement angle");
    estimate_cmd->add_option("--orientation", scenario_orientation, "perp (the expansion exists for perp only)");

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "slow extended-precision reference evaluation");
    add_point_flags(oracle_cmd, oracle_args.point);
    oracle_cmd->add_option("--kind", oracle_args.kind, "cos (shift) or sin (rate)")->check(CLI::IsMember({"cos", "sin"}));
    oracle_cmd->add_option("--method", oracle_args.method, "brute, limit or kernel")
        ->check(CLI::IsMember({"brute", "limit", "kernel"}));
    oracle_cmd->add_option("--n-max", oracle_args.n_max, "brute force truncation index");
    oracle_cmd->add_option("--digits", oracle_args.digits, "decimal digits of working precision");
    oracle_cmd->add_option("--z", oracle_args.z, "kernel argument for --method kernel");
    oracle_cmd->add_option("--cache", oracle_args.cache, "oracle cache directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*shift_cmd) return eval_point(Quantity::Shift, shift_args);
        if (*rate_cmd) return eval_point(Quantity::Rate, rate_args);
        if (*sweep_cmd) return run_sweep_file(spec_path, sweep_out);
        if (*figure_cmd) return run_figure(figure_name, figure_dir);
        if (*estimate_cmd) {
            scenario.orientation = parse_orientation(scenario_orientation);
            return run_estimate(scenario);
        }
        if (*oracle_cmd) return run_oracle(oracle_args);
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const std::invalid_argument& e) {  // GeometryError, RunSpecError, SweepPointError
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
