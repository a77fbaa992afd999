#include "resonance/units.hpp"

#include <cmath>
#include <vector>

#include "resonance/observables.hpp"

namespace resonance::units {

double length_nm(double reduced, double omega0_eV) { return reduced * kHbarC_eV_nm / omega0_eV; }

double reduced_acceleration(double a_SI, double omega0_eV) {
    return (a_SI / kSpeedOfLight_m_s) * (kHbar_eV_s / omega0_eV);
}

ReducedScenario to_reduced(const PhysicalScenario& s) {
    std::vector<GeometryIssue> issues;
    if (!(s.omega0_eV > 0.0) || !std::isfinite(s.omega0_eV)) issues.push_back({"omega0", "must be finite and > 0"});
    if (!(s.a_SI >= 0.0) || !std::isfinite(s.a_SI)) issues.push_back({"a", "must be finite and >= 0"});
    if (!issues.empty()) throw GeometryError(issues);

    const double per_nm = s.omega0_eV / kHbarC_eV_nm;
    GeometryConfig g;
    g.orientation = s.orientation;
    g.d = s.d_nm * per_nm;
    g.z0 = s.z0_nm * per_nm;
    g.L = s.L_nm * per_nm;
    g.a = reduced_acceleration(s.a_SI, s.omega0_eV);
    AtomState state{s.theta, s.lambda};
    check_state(state);
    return {validate(g), state};
}

Section4Estimate section4_estimate(const PhysicalScenario& s) {
    const ReducedScenario r = to_reduced(s);
    const ObservableValue full = low_acceleration_shift<double>(r.config);
    const double a2 = low_acceleration_a2_coefficient<double>(r.config);

    Section4Estimate e;
    e.reduced_a = r.config.a();
    e.reduced_a2_coefficient = a2;
    e.regime_warning = full.regime_warning;
    const double unit = unit_factor(Prefactor::ShiftUnit, r.state, s.omega0_eV);
    e.shift_eV = full.reduced_value * unit;
    const double correction = e.reduced_a * e.reduced_a * a2;
    e.acceleration_correction_eV = correction * unit;
    e.inertial_shift_eV = (full.reduced_value - correction) * unit;
    if (e.acceleration_correction_eV != 0.0)
        e.orders_of_magnitude_off = std::log10(std::abs(e.acceleration_correction_eV) / e.claimed_order_eV);
    return e;
}

}  // namespace resonance::units
