#include "resonance/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "resonance/oracle.hpp"

namespace resonance {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || trim(text.substr(used)) != "")
        throw RunSpecError("runspec key '" + key + "': not a number: '" + text + "'");
    return v;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double& axis_field(GeometryConfig& g, const std::string& param) {
    if (param == "d") return g.d;
    if (param == "z0") return g.z0;
    if (param == "L") return g.L;
    if (param == "a") return g.a;
    throw RunSpecError("sweep parameter must be one of d, z0, L, a (got '" + param + "')");
}

SweepRow evaluate_point(const RunSpec& spec, const ValidatedConfig& cfg, double x) {
    SeriesOptions opts;
    opts.tol = spec.tol;
    const ObservableValue v = evaluate(spec.observable, cfg, opts);
    SweepRow row;
    row.swept_value = x;
    row.reduced_value = v.reduced_value;
    row.normalized_value = normalized_value(v, spec.state);
    row.tail_bound = v.tail_bound;
    row.converged = v.converged;
    return row;
}

std::vector<ValidatedConfig> validate_points(const RunSpec& spec, const std::vector<double>& grid) {
    check_state(spec.state);
    if (!(spec.tol > 0.0)) throw RunSpecError("tol must be > 0");
    std::vector<ValidatedConfig> cfgs;
    cfgs.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            cfgs.push_back(validate(point_config(spec, grid[i])));
        } catch (const GeometryError& e) {
            throw SweepPointError(i, grid[i], e.what());
        }
    }
    return cfgs;
}

std::vector<SweepRow> run(const RunSpec& spec, bool parallel) {
    const std::vector<double> grid = sweep_grid(spec.sweep);
    const std::vector<ValidatedConfig> cfgs = validate_points(spec, grid);
    const auto n = static_cast<std::int64_t>(grid.size());
    std::vector<SweepRow> rows(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            rows[k] = evaluate_point(spec, cfgs[k], grid[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

}  // namespace

SweepPointError::SweepPointError(std::size_t index, double value, const std::string& reason)
    : std::invalid_argument("sweep point " + std::to_string(index) + " (value " + fmt(value) + "): " + reason),
      index_(index),
      value_(value) {}

RunSpec parse_runspec(std::istream& in) {
    RunSpec spec;
    std::map<std::string, std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw RunSpecError("runspec line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (seen.count(key)) throw RunSpecError("runspec key '" + key + "' given twice");
        seen[key] = val;

        if (key == "quantity") spec.observable.quantity = parse_quantity(val);
        else if (key == "model") spec.observable.model = parse_model(val);
        else if (key == "orientation") spec.fixed.orientation = parse_orientation(val);
        else if (key == "d") spec.fixed.d = parse_number(key, val);
        else if (key == "z0") spec.fixed.z0 = parse_number(key, val);
        else if (key == "L") spec.fixed.L = parse_number(key, val);
        else if (key == "a") spec.fixed.a = parse_number(key, val);
        else if (key == "theta") spec.state.theta = parse_number(key, val);
        else if (key == "lambda") spec.state.lambda = parse_number(key, val);
        else if (key == "tol") spec.tol = parse_number(key, val);
        else if (key == "output") spec.output = val;
        else if (key == "sweep") spec.sweep.param = val;
        else if (key == "start") spec.sweep.start = parse_number(key, val);
        else if (key == "stop") spec.sweep.stop = parse_number(key, val);
        else if (key == "count") {
            const double c = parse_number(key, val);
            if (c != std::floor(c) || c < 2 || c > 1e7) throw RunSpecError("count must be an integer >= 2");
            spec.sweep.count = static_cast<int>(c);
        } else if (key == "spacing") {
            if (val == "linear") spec.sweep.spacing = Spacing::Linear;
            else if (val == "log") spec.sweep.spacing = Spacing::Log;
            else throw RunSpecError("spacing must be linear or log");
        } else {
            throw RunSpecError("unknown runspec key '" + key + "'");
        }
    }
    if (!seen.count("sweep")) throw RunSpecError("runspec needs a 'sweep' key naming the swept parameter");
    axis_field(spec.fixed, spec.sweep.param);  // rejects unknown parameter names
    return spec;
}

RunSpec load_runspec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RunSpecError("cannot read runspec file " + path.string());
    return parse_runspec(in);
}

std::string canonical_runspec(const RunSpec& s) {
    std::ostringstream o;
    o << "quantity = " << to_string(s.observable.quantity) << '\n'
      << "model = " << to_string(s.observable.model) << '\n'
      << "orientation = " << to_string(s.fixed.orientation) << '\n'
      << "d = " << fmt(s.fixed.d) << '\n'
      << "z0 = " << fmt(s.fixed.z0) << '\n'
      << "L = " << fmt(s.fixed.L) << '\n'
      << "a = " << fmt(s.fixed.a) << '\n'
      << "theta = " << fmt(s.state.theta) << '\n'
      << "lambda = " << fmt(s.state.lambda) << '\n'
      << "tol = " << fmt(s.tol) << '\n'
      << "sweep = " << s.sweep.param << '\n'
      << "start = " << fmt(s.sweep.start) << '\n'
      << "stop = " << fmt(s.sweep.stop) << '\n'
      << "count = " << s.sweep.count << '\n'
      << "spacing = " << (s.sweep.spacing == Spacing::Linear ? "linear" : "log") << '\n';
    return o.str();
}

std::string runspec_hash(const RunSpec& spec) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(oracle::fnv1a64(canonical_runspec(spec))));
    return buf;
}

std::vector<double> sweep_grid(const SweepAxis& axis) {
    if (axis.count < 2) throw RunSpecError("sweep count must be >= 2");
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop)) throw RunSpecError("sweep bounds must be finite");
    if (axis.spacing == Spacing::Log && !(axis.start > 0.0 && axis.stop > 0.0))
        throw RunSpecError("log spacing needs positive bounds");
    std::vector<double> grid(static_cast<std::size_t>(axis.count));
    const double steps = static_cast<double>(axis.count - 1);
    for (int i = 0; i < axis.count; ++i) {
        const double t = static_cast<double>(i) / steps;
        grid[static_cast<std::size_t>(i)] =
            axis.spacing == Spacing::Linear
                ? axis.start + (axis.stop - axis.start) * t
                : std::exp(std::log(axis.start) + (std::log(axis.stop) - std::log(axis.start)) * t);
    }
    grid.front() = axis.start;
    grid.back() = axis.stop;
    return grid;
}

GeometryConfig point_config(const RunSpec& spec, double swept_value) {
    GeometryConfig g = spec.fixed;
    axis_field(g, spec.sweep.param) = swept_value;
    return g;
}

std::vector<SweepRow> run_sweep(const RunSpec& spec) { return run(spec, true); }
std::vector<SweepRow> run_sweep_serial(const RunSpec& spec) { return run(spec, false); }

void write_csv(std::ostream& out, const RunSpec& spec, const std::vector<SweepRow>& rows) {
    out << "swept_param,swept_value,reduced_value,normalized_value,tail_bound,converged\n";
    out << "# generator=resonance " << RESONANCE_VERSION << " input_hash=" << runspec_hash(spec) << '\n';
    for (const auto& r : rows) {
        out << spec.sweep.param << ',' << fmt(r.swept_value) << ',' << fmt(r.reduced_value) << ','
            << fmt(r.normalized_value) << ',' << fmt(r.tail_bound) << ',' << (r.converged ? "true" : "false") << '\n';
    }
}

void write_csv_file(const std::filesystem::path& path, const RunSpec& spec, const std::vector<SweepRow>& rows) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_csv(out, spec, rows);
}

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig3", "fig4", "fig5", "fig6", "fig7"};
    return names;
}

std::vector<RunSpec> figure_preset(const std::string& name) {
    constexpr double kTheta = 3.0 * std::numbers::pi / 4.0;
    constexpr double kA = 4.0, kL = 1.2, kD = 0.5;
    auto base = [&](Quantity q, Orientation o) {
        RunSpec s;
        s.observable = {q, Model::TwoMirror};
        s.fixed = {o, kD, 0.3, kL, kA};
        s.state = {kTheta, 1.0};
        return s;
    };
    auto tag = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(buf);
    };
    // Interior grid symmetric about the midpoint of (0, span).
    auto interior = [](double span, int count) {
        SweepAxis ax;
        ax.param = "z0";
        ax.count = count;
        ax.start = span / (count + 1);
        ax.stop = span * count / (count + 1);
        return ax;
    };

    std::vector<RunSpec> out;
    if (name == "fig3") {
        for (Orientation o : {Orientation::Perpendicular, Orientation::Parallel}) {
            RunSpec s = base(Quantity::Shift, o);
            s.sweep = {"a", 0.1, 12.0, 120, Spacing::Linear};
            s.output = std::string("fig3_") + to_string(o) + ".csv";
            out.push_back(s);
        }
    } else if (name == "fig4" || name == "fig6") {
        const bool rate = name == "fig6";
        const std::vector<Orientation> orientations =
            rate ? std::vector<Orientation>{Orientation::Perpendicular}
                 : std::vector<Orientation>{Orientation::Perpendicular, Orientation::Parallel};
        for (Orientation o : orientations) {
            for (double d : {0.3, 0.5}) {
                RunSpec s = base(rate ? Quantity::Rate : Quantity::Shift, o);
                s.fixed.d = d;
                s.sweep = interior(o == Orientation::Perpendicular ? kL - d : kL, 69);
                s.output = name + "_" + to_string(o) + "_d" + tag(d) + ".csv";
                out.push_back(s);
            }
        }
    } else if (name == "fig5") {
        for (Orientation o : {Orientation::Perpendicular, Orientation::Parallel}) {
            RunSpec s = base(Quantity::Shift, o);
            s.fixed.z0 = 0.05;
            s.sweep = {"d", 0.1, kL - 2 * 0.05, 101, Spacing::Linear};
            s.output = std::string("fig5_") + to_string(o) + ".csv";
            out.push_back(s);
        }
    } else if (name == "fig7") {
        for (Orientation o : {Orientation::Perpendicular, Orientation::Parallel}) {
            for (double z0 : {0.1, 0.3}) {
                RunSpec s = base(Quantity::Rate, o);
                s.fixed.z0 = z0;
                const double lo = o == Orientation::Perpendicular ? 1.05 * (z0 + kD) : 1.05 * std::max(kD, z0);
                s.sweep = {"L", lo, 10.0, 100, Spacing::Linear};
                s.output = std::string("fig7_") + to_string(o) + "_z0" + tag(z0) + ".csv";
                out.push_back(s);
            }
        }
    } else {
        throw RunSpecError("unknown figure '" + name + "' (expected fig3..fig7)");
    }
    return out;
}

}  // namespace resonance
