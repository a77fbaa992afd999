#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "resonance/geometry.hpp"
#include "resonance/kernel.hpp"

namespace resonance::oracle {

enum class Method { BruteForceSum, EulerMaclaurin, AbelLimit, KernelDirect };

const char* to_string(Method m);

struct OracleReport {
    std::string value;  // decimal, precision_digits significant digits
    std::int64_t n_max_used = 0;
    Method method = Method::BruteForceSum;
    int precision_digits = 50;

    double approx() const;
};

class OracleBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BruteForceOptions {
    int precision_digits = 50;
    double max_kernel_evaluations = 1e9;
    std::int64_t chunk = 1 << 15;
};

// Sum of every bracket with |n| <= n_max, evaluated in MPFR.
// Chunks are fixed by n_max, so the result does not depend on the thread count.
OracleReport brute_force_sum(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max,
                             const BruteForceOptions& opts = {});
OracleReport brute_force_sum_serial(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max,
                                    const BruteForceOptions& opts = {});

OracleReport kernel_oracle(KernelKind kind, double z, double a, int precision_digits = 50);
OracleReport phase_oracle(double z, double a, int precision_digits = 50);
OracleReport envelope_oracle(double z, double a, int precision_digits = 50);

struct LimitOptions {
    int precision_digits = 50;
    // Largest phase step 2L dT/dz at which the Euler-Maclaurin tail takes over (a > 0).
    double max_phase_step = 0.2;
    int em_order = 12;        // number of Bernoulli correction terms
    int abel_order = 24;      // number of Abel boundary terms (a = 0)
    std::int64_t min_direct = 2000;
};

// Full bilateral sum for a > 0: direct summation up to a cutoff where the phase varies slowly,
// then the integral of the smooth tail plus Euler-Maclaurin corrections (Taylor-mode derivatives).
OracleReport euler_maclaurin_sum(KernelKind kind, const ValidatedConfig& cfg, const LimitOptions& opts = {});

// Full bilateral sum for a = 0: direct summation plus a high-order summation-by-parts tail.
OracleReport abel_limit_sum(KernelKind kind, const ValidatedConfig& cfg, const LimitOptions& opts = {});

// Dispatches to abel_limit_sum at a = 0 and euler_maclaurin_sum otherwise.
OracleReport limit_sum(KernelKind kind, const ValidatedConfig& cfg, const LimitOptions& opts = {});

class DegenerateFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExponentFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root-mean-square residual of the log-log fit
    std::size_t points_used = 0;
};

// Least-squares slope of log|value(a) - value(0)| against log a.
// Points whose difference is exactly zero are skipped; if none remain the fit is degenerate.
ExponentFit linear_term_probe(const std::function<double(double)>& difference, const std::vector<double>& a_grid);

std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

// Content-addressed store of reports, one text record per key, guarded by an advisory lock.
class OracleCache {
public:
    explicit OracleCache(std::filesystem::path dir);

    std::optional<OracleReport> load(const std::string& inputs) const;
    void store(const std::string& inputs, const OracleReport& report) const;

    // Returns the cached report or computes, stores and returns a fresh one.
    OracleReport get_or_compute(const std::string& inputs, const std::function<OracleReport()>& compute) const;

    std::filesystem::path record_path(const std::string& inputs) const;
    const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    std::filesystem::path dir_;
};

std::uint64_t fnv1a64(const std::string& text);

// Canonical, exactly reproducible description of an oracle request (doubles in hex-float form).
std::string brute_force_key(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max, int precision_digits);
std::string limit_key(KernelKind kind, const ValidatedConfig& cfg, const LimitOptions& opts);

}  // namespace resonance::oracle
