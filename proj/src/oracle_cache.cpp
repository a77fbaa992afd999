#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "resonance/oracle.hpp"

namespace resonance::oracle {

namespace {

std::string hexfloat(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

std::string config_key(KernelKind kind, const ValidatedConfig& cfg) {
    return std::string("kind=") + to_string(kind) + " orientation=" + to_string(cfg.orientation()) +
           " d=" + hexfloat(cfg.d()) + " z0=" + hexfloat(cfg.z0()) + " L=" + hexfloat(cfg.L()) +
           " a=" + hexfloat(cfg.a());
}

// Holds an flock on the cache's lock file for the lifetime of the object.
class DirLock {
public:
    DirLock(const std::filesystem::path& dir, bool exclusive) {
        fd_ = ::open((dir / ".lock").c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0) ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
    }
    ~DirLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    int fd_ = -1;
};

Method parse_method(const std::string& s) {
    for (Method m : {Method::BruteForceSum, Method::EulerMaclaurin, Method::AbelLimit, Method::KernelDirect})
        if (s == to_string(m)) return m;
    throw std::runtime_error("unknown oracle method in cache record: " + s);
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string brute_force_key(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max, int precision_digits) {
    return "method=BruteForceSum " + config_key(kind, cfg) + " n_max=" + std::to_string(n_max) +
           " digits=" + std::to_string(precision_digits);
}

std::string limit_key(KernelKind kind, const ValidatedConfig& cfg, const LimitOptions& opts) {
    return std::string("method=") + (cfg.a() == 0.0 ? "AbelLimit " : "EulerMaclaurin ") + config_key(kind, cfg) +
           " digits=" + std::to_string(opts.precision_digits) + " step=" + hexfloat(opts.max_phase_step) +
           " em_order=" + std::to_string(opts.em_order) + " abel_order=" + std::to_string(opts.abel_order) +
           " min_direct=" + std::to_string(opts.min_direct);
}

OracleCache::OracleCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path OracleCache::record_path(const std::string& inputs) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.txt", static_cast<unsigned long long>(fnv1a64(inputs)));
    return dir_ / name;
}

std::optional<OracleReport> OracleCache::load(const std::string& inputs) const {
    DirLock lock(dir_, false);
    std::ifstream in(record_path(inputs));
    if (!in) return std::nullopt;
    OracleReport report;
    std::string line, stored_inputs;
    bool have_value = false;
    while (std::getline(in, line)) {
        const auto colon = line.find(": ");
        if (colon == std::string::npos) continue;
        const std::string key = line.substr(0, colon);
        const std::string val = line.substr(colon + 2);
        if (key == "inputs") stored_inputs = val;
        else if (key == "method") report.method = parse_method(val);
        else if (key == "precision_digits") report.precision_digits = std::stoi(val);
        else if (key == "n_max_used") report.n_max_used = std::stoll(val);
        else if (key == "value") {
            report.value = val;
            have_value = true;
        }
    }
    // A hash collision or a truncated record is treated as a miss.
    if (stored_inputs != inputs || !have_value) return std::nullopt;
    return report;
}

void OracleCache::store(const std::string& inputs, const OracleReport& report) const {
    DirLock lock(dir_, true);
    const auto path = record_path(inputs);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << "inputs: " << inputs << '\n'
            << "method: " << to_string(report.method) << '\n'
            << "precision_digits: " << report.precision_digits << '\n'
            << "n_max_used: " << report.n_max_used << '\n'
            << "value: " << report.value << '\n';
    }
    std::filesystem::rename(tmp, path);
}

OracleReport OracleCache::get_or_compute(const std::string& inputs,
                                         const std::function<OracleReport()>& compute) const {
    if (auto hit = load(inputs)) return *hit;
    OracleReport report = compute();
    store(inputs, report);
    return report;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
    if (count < 2 || !(lo > 0) || !(hi > lo)) throw std::invalid_argument("geometric_grid needs 0 < lo < hi, count >= 2");
    std::vector<double> grid(count);
    const double step = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
    grid.back() = hi;
    return grid;
}

ExponentFit linear_term_probe(const std::function<double(double)>& difference, const std::vector<double>& a_grid) {
    if (a_grid.size() < 6) throw std::invalid_argument("linear_term_probe needs at least 6 grid points");
    std::vector<double> xs, ys;
    for (double a : a_grid) {
        if (!(a > 0.0 && a <= 1e-2)) throw std::invalid_argument("probe grid must lie in (0, 1e-2]");
        const double diff = std::abs(difference(a));
        if (diff == 0.0 || !std::isfinite(diff)) continue;
        xs.push_back(std::log(a));
        ys.push_back(std::log(diff));
    }
    if (xs.size() < 2)
        throw DegenerateFitError("value(a) - value(0) vanishes on the grid; exponent indistinguishable from >= 2");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    ExponentFit fit;
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.exponent * sx) / n;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - fit.intercept - fit.exponent * xs[i];
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    fit.points_used = xs.size();
    return fit;
}

}  // namespace resonance::oracle
