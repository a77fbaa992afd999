#include <doctest.h>

#include <cmath>
#include <sstream>

#include "resonance/sweep.hpp"

using namespace resonance;

namespace {

RunSpec small_spec() {
    std::istringstream in(R"(
# shift against acceleration
quantity = shift
model = two-mirror
orientation = par
d = 0.5
z0 = 0.3
L = 1.2
theta = 2.356194490192345
sweep = a
start = 0.5
stop = 6
count = 12
spacing = linear
output = out.csv
)");
    return parse_runspec(in);
}

}  // namespace

TEST_CASE("runspec parsing") {
    const RunSpec s = small_spec();
    CHECK(s.fixed.orientation == Orientation::Parallel);
    CHECK(s.sweep.param == "a");
    CHECK(s.sweep.count == 12);
    CHECK(s.output == "out.csv");
    CHECK(s.tol == 1e-10);

    std::istringstream unknown("sweep = a\ncolour = blue\n");
    CHECK_THROWS_AS(parse_runspec(unknown), RunSpecError);
    std::istringstream twice("sweep = a\nd = 1\nd = 2\n");
    CHECK_THROWS_AS(parse_runspec(twice), RunSpecError);
    std::istringstream bad_param("sweep = theta\n");
    CHECK_THROWS_AS(parse_runspec(bad_param), RunSpecError);
    std::istringstream no_sweep("d = 1\n");
    CHECK_THROWS_AS(parse_runspec(no_sweep), RunSpecError);
    std::istringstream garbage("sweep = a\nd = 1.0x\n");
    CHECK_THROWS_AS(parse_runspec(garbage), RunSpecError);
}

TEST_CASE("canonical form and hash") {
    RunSpec a = small_spec();
    RunSpec b = small_spec();
    CHECK(runspec_hash(a) == runspec_hash(b));
    b.output = "elsewhere.csv";  // the destination does not change the content
    CHECK(runspec_hash(a) == runspec_hash(b));
    b.fixed.d = 0.6;
    CHECK(runspec_hash(a) != runspec_hash(b));
    std::istringstream again(canonical_runspec(a));
    CHECK(canonical_runspec(parse_runspec(again)) == canonical_runspec(a));
}

TEST_CASE("grids") {
    const auto lin = sweep_grid({"a", 1.0, 2.0, 5, Spacing::Linear});
    CHECK(lin.size() == 5);
    CHECK(lin[2] == doctest::Approx(1.5));
    const auto lg = sweep_grid({"a", 1e-3, 1e-1, 3, Spacing::Log});
    CHECK(lg[1] == doctest::Approx(1e-2));
    CHECK_THROWS_AS(sweep_grid({"a", 0.0, 1.0, 3, Spacing::Log}), RunSpecError);
    CHECK_THROWS_AS(sweep_grid({"a", 0.0, 1.0, 1, Spacing::Linear}), RunSpecError);
}

TEST_CASE("parallel sweep equals the serial reference") {
    const RunSpec s = small_spec();
    const auto par = run_sweep(s);
    const auto ser = run_sweep_serial(s);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].swept_value == ser[i].swept_value);
        CHECK(par[i].reduced_value == ser[i].reduced_value);
        CHECK(par[i].tail_bound == ser[i].tail_bound);
        CHECK(par[i].converged);
        CHECK(par[i].tail_bound <= s.tol);
        if (i > 0) CHECK(par[i].swept_value > par[i - 1].swept_value);
    }
}

TEST_CASE("csv layout is deterministic") {
    const RunSpec s = small_spec();
    std::ostringstream a, b;
    write_csv(a, s, run_sweep(s));
    write_csv(b, s, run_sweep(s));
    CHECK(a.str() == b.str());
    std::istringstream lines(a.str());
    std::string header, meta, row;
    std::getline(lines, header);
    std::getline(lines, meta);
    std::getline(lines, row);
    CHECK(header == "swept_param,swept_value,reduced_value,normalized_value,tail_bound,converged");
    CHECK(meta.find("input_hash=" + runspec_hash(s)) != std::string::npos);
    CHECK(row.rfind("a,0.5,", 0) == 0);
}

TEST_CASE("an invalid point aborts the sweep and is named") {
    RunSpec s = small_spec();
    s.fixed.orientation = Orientation::Perpendicular;
    s.fixed.d = 0.55;
    s.sweep = {"z0", 0.1, 0.8, 8, Spacing::Linear};
    try {
        run_sweep(s);
        FAIL("expected SweepPointError");
    } catch (const SweepPointError& e) {
        CHECK(e.index() == 6);  // z0 = 0.7 lies beyond the far plate
        CHECK(std::string(e.what()).find("sweep point 6") != std::string::npos);
    }
}

TEST_CASE("figure presets") {
    CHECK(figure_preset("fig3").size() == 2);
    CHECK(figure_preset("fig7").front().fixed.a == 4.0);
    CHECK(figure_preset("fig7").front().fixed.d == 0.5);
    CHECK_THROWS_AS(figure_preset("fig9"), RunSpecError);
    for (const auto& name : figure_names()) {
        for (const RunSpec& s : figure_preset(name)) {
            CHECK(s.state.theta == doctest::Approx(3 * 3.14159265358979 / 4));
            for (double x : sweep_grid(s.sweep)) CHECK_NOTHROW(validate(point_config(s, x)));
        }
    }
}

TEST_CASE("midpoint-symmetric preset grid gives mirror-symmetric rows") {
    const RunSpec s = figure_preset("fig4").front();
    const auto rows = run_sweep(s);
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n / 2; ++i)
        CHECK(std::abs(rows[i].reduced_value - rows[n - 1 - i].reduced_value) <= 3e-10);
}
