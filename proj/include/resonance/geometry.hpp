#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace resonance {

enum class Orientation { Perpendicular, Parallel };

const char* to_string(Orientation o);
Orientation parse_orientation(const std::string& text);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Two atoms on parallel hyperbolic worldlines between plates at z = 0 and z = L.
// All lengths are multiplied by omega0 and the acceleration is divided by it.
struct GeometryConfig {
    Orientation orientation = Orientation::Perpendicular;
    double d = 0.5;
    double z0 = 0.3;
    double L = 1.2;
    double a = 0.0;
};

enum class Boundary { TwoMirror, SingleMirror, FreeSpace };

struct GeometryIssue {
    std::string field;
    std::string reason;
};

class GeometryError : public std::invalid_argument {
public:
    explicit GeometryError(std::vector<GeometryIssue> issues);
    const std::vector<GeometryIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<GeometryIssue> issues_;
};

class ValidatedConfig {
public:
    const GeometryConfig& config() const noexcept { return cfg_; }
    Orientation orientation() const noexcept { return cfg_.orientation; }
    double d() const noexcept { return cfg_.d; }
    double z0() const noexcept { return cfg_.z0; }
    double L() const noexcept { return cfg_.L; }
    double a() const noexcept { return cfg_.a; }
    Boundary boundary() const noexcept;

private:
    explicit ValidatedConfig(const GeometryConfig& cfg) : cfg_(cfg) {}
    GeometryConfig cfg_;
    friend std::variant<ValidatedConfig, std::vector<GeometryIssue>> check_geometry(const GeometryConfig&);
};

// Collects every violated constraint instead of stopping at the first one.
std::variant<ValidatedConfig, std::vector<GeometryIssue>> check_geometry(const GeometryConfig& cfg);

// Throws GeometryError listing all issues.
ValidatedConfig validate(const GeometryConfig& cfg);

// State sin(theta)|g_A e_B> + cos(theta)|e_A g_B> with coupling lambda.
struct AtomState {
    double theta = 3.0 * 3.14159265358979323846 / 4.0;
    double lambda = 1.0;
};

void check_state(const AtomState& state);

// sin(2 theta), snapped to exactly zero at the separable angles 0, pi/2, pi.
double entanglement_factor(const AtomState& state);

}  // namespace resonance
