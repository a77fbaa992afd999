// Fills the oracle cache used by the acceptance suite. Safe to interrupt and rerun:
// finished records are skipped.
#include <chrono>
#include <cstdio>
#include <string>

#include "../tests/common/oracle_suite.hpp"
#include "resonance/oracle.hpp"

using namespace resonance;

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "tests/data/oracle_cache";
    const oracle::OracleCache cache(dir);
    const auto cases = suite::oracle_cases();

    auto run = [&](const suite::OracleCase& c, std::int64_t n_max) {
        const auto cfg = validate(c.cfg);
        const auto key = oracle::brute_force_key(c.kind, cfg, n_max, suite::kOracleDigits);
        const auto t0 = std::chrono::steady_clock::now();
        const bool cached = cache.load(key).has_value();
        const auto report = cache.get_or_compute(key, [&] {
            oracle::BruteForceOptions opts;
            opts.precision_digits = suite::kOracleDigits;
            return oracle::brute_force_sum(c.kind, cfg, n_max, opts);
        });
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s n_max=%lld %s %.1fs %s\n", key.c_str(), static_cast<long long>(n_max),
                    cached ? "cached" : "computed", secs, report.value.c_str());
        std::fflush(stdout);
    };

    run(cases[0], suite::kBruteForceShortTerms);
    for (const auto& c : cases) run(c, suite::kBruteForceTerms);
    return 0;
}
