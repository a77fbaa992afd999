#pragma once

#include "resonance/geometry.hpp"

namespace resonance::units {

inline constexpr double kHbarC_eV_nm = 197.3269804;
inline constexpr double kSpeedOfLight_m_s = 2.99792458e8;
inline constexpr double kHbar_eV_s = 6.582119569e-16;

// A laboratory setting: energies in eV, lengths in nm, acceleration in m/s^2.
struct PhysicalScenario {
    Orientation orientation = Orientation::Perpendicular;
    double omega0_eV = 5.0;
    double L_nm = 50.0;
    double d_nm = 20.0;
    double z0_nm = 12.0;
    double a_SI = 1e17;
    double lambda = 0.1;
    double theta = 3.0 * 3.14159265358979323846 / 4.0;
};

struct ReducedScenario {
    ValidatedConfig config;
    AtomState state;
};

ReducedScenario to_reduced(const PhysicalScenario& s);

// Length in nm corresponding to a reduced length at the given transition energy.
double length_nm(double reduced, double omega0_eV);

// a / omega0 with a / c read as an inverse time.
double reduced_acceleration(double a_SI, double omega0_eV);

struct Section4Estimate {
    double reduced_a = 0.0;
    double reduced_a2_coefficient = 0.0;
    double shift_eV = 0.0;
    double inertial_shift_eV = 0.0;
    double acceleration_correction_eV = 0.0;
    bool regime_warning = false;
    double claimed_order_eV = 1e-11;
    // log10(|correction| / claimed order); 0 when the correction vanishes.
    double orders_of_magnitude_off = 0.0;
};

Section4Estimate section4_estimate(const PhysicalScenario& s);

}  // namespace resonance::units
