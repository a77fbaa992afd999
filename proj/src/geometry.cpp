#include "resonance/geometry.hpp"

#include <cmath>
#include <numbers>

namespace resonance {

namespace {

std::string join_issues(const std::vector<GeometryIssue>& issues) {
    std::string msg = "invalid geometry:";
    for (const auto& issue : issues) msg += " [" + issue.field + ": " + issue.reason + "]";
    return msg;
}

bool positive_or_inf(double v) { return v > 0.0 && !std::isnan(v); }

}  // namespace

const char* to_string(Orientation o) {
    return o == Orientation::Perpendicular ? "perp" : "par";
}

Orientation parse_orientation(const std::string& text) {
    if (text == "perp" || text == "perpendicular") return Orientation::Perpendicular;
    if (text == "par" || text == "parallel") return Orientation::Parallel;
    throw GeometryError(std::vector<GeometryIssue>{{"orientation", "expected perp or par, got '" + text + "'"}});
}

GeometryError::GeometryError(std::vector<GeometryIssue> issues)
    : std::invalid_argument(join_issues(issues)), issues_(std::move(issues)) {}

Boundary ValidatedConfig::boundary() const noexcept {
    if (std::isinf(cfg_.z0)) return Boundary::FreeSpace;
    if (std::isinf(cfg_.L)) return Boundary::SingleMirror;
    return Boundary::TwoMirror;
}

std::variant<ValidatedConfig, std::vector<GeometryIssue>> check_geometry(const GeometryConfig& cfg) {
    std::vector<GeometryIssue> issues;
    if (!(cfg.d > 0.0) || !std::isfinite(cfg.d)) issues.push_back({"d", "must be finite and > 0"});
    if (!positive_or_inf(cfg.z0)) issues.push_back({"z0", "must be > 0"});
    if (!positive_or_inf(cfg.L)) issues.push_back({"L", "must be > 0"});
    if (!(cfg.a >= 0.0) || !std::isfinite(cfg.a)) issues.push_back({"a", "must be finite and >= 0"});

    if (issues.empty()) {
        if (std::isinf(cfg.z0) && !std::isinf(cfg.L)) {
            issues.push_back({"z0", "infinite z0 requires infinite L (free space)"});
        } else if (std::isfinite(cfg.L)) {
            if (cfg.orientation == Orientation::Perpendicular) {
                if (!(cfg.z0 + cfg.d < cfg.L))
                    issues.push_back({"z0", "z0 + d must be < L: an atom sits on or beyond the far plate"});
            } else if (!(cfg.z0 < cfg.L)) {
                issues.push_back({"z0", "z0 must be < L: the atoms sit on or beyond the far plate"});
            }
        }
    }
    if (!issues.empty()) return issues;
    return ValidatedConfig(cfg);
}

ValidatedConfig validate(const GeometryConfig& cfg) {
    auto result = check_geometry(cfg);
    if (auto* issues = std::get_if<std::vector<GeometryIssue>>(&result)) throw GeometryError(*issues);
    return std::get<ValidatedConfig>(result);
}

void check_state(const AtomState& state) {
    std::vector<GeometryIssue> issues;
    if (!(state.theta >= 0.0 && state.theta <= std::numbers::pi + 1e-12))
        issues.push_back({"theta", "must lie in [0, pi]"});
    if (!(state.lambda >= 0.0) || !std::isfinite(state.lambda))
        issues.push_back({"lambda", "must be finite and >= 0"});
    if (!issues.empty()) throw GeometryError(issues);
}

double entanglement_factor(const AtomState& state) {
    const double twice = 2.0 * state.theta;
    const double nearest = std::round(twice / std::numbers::pi) * std::numbers::pi;
    if (std::abs(twice - nearest) <= 1e-12) return 0.0;
    return std::sin(twice);
}

}  // namespace resonance
