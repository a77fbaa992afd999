#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "resonance/geometry.hpp"
#include "resonance/observables.hpp"

namespace resonance {

enum class Spacing { Linear, Log };

struct SweepAxis {
    std::string param = "a";  // one of d, z0, L, a
    double start = 0.1;
    double stop = 12.0;
    int count = 2;
    Spacing spacing = Spacing::Linear;
};

// Declarative sweep: every parameter fixed except the one named by the axis.
struct RunSpec {
    Observable observable;
    GeometryConfig fixed;
    SweepAxis sweep;
    AtomState state;
    double tol = 1e-10;
    std::string output;
};

struct SweepRow {
    double swept_value = 0.0;
    double reduced_value = 0.0;
    double normalized_value = 0.0;
    double tail_bound = 0.0;
    bool converged = true;
};

class RunSpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SweepPointError : public std::invalid_argument {
public:
    SweepPointError(std::size_t index, double value, const std::string& reason);
    std::size_t index() const noexcept { return index_; }
    double value() const noexcept { return value_; }

private:
    std::size_t index_;
    double value_;
};

// Parses `key = value` lines; '#' starts a comment. Unknown keys are rejected.
RunSpec parse_runspec(std::istream& in);
RunSpec load_runspec(const std::filesystem::path& path);

// Stable text form of every field that influences the output; hashed into the CSV header.
std::string canonical_runspec(const RunSpec& spec);
std::string runspec_hash(const RunSpec& spec);

std::vector<double> sweep_grid(const SweepAxis& axis);
GeometryConfig point_config(const RunSpec& spec, double swept_value);

// Grid points run in parallel; rows come back in grid order and do not depend on the thread count.
std::vector<SweepRow> run_sweep(const RunSpec& spec);
// Single-threaded reference for run_sweep.
std::vector<SweepRow> run_sweep_serial(const RunSpec& spec);

void write_csv(std::ostream& out, const RunSpec& spec, const std::vector<SweepRow>& rows);
void write_csv_file(const std::filesystem::path& path, const RunSpec& spec, const std::vector<SweepRow>& rows);

const std::vector<std::string>& figure_names();
// One RunSpec per plotted curve; output names are relative file names.
std::vector<RunSpec> figure_preset(const std::string& name);

}  // namespace resonance
