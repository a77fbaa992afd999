#pragma once

#include <cstdint>
#include <string>

#include "resonance/geometry.hpp"
#include "resonance/image_series.hpp"

namespace resonance {

enum class Quantity { Shift, Rate };
enum class Model { TwoMirror, SingleMirror, FreeSpace, LowAcceleration };
enum class Prefactor { ShiftUnit, RateUnit };

const char* to_string(Quantity q);
const char* to_string(Model m);
Quantity parse_quantity(const std::string& text);
Model parse_model(const std::string& text);

inline KernelKind kernel_kind(Quantity q) { return q == Quantity::Shift ? KernelKind::Cosine : KernelKind::Sine; }

struct Observable {
    Quantity quantity = Quantity::Shift;
    Model model = Model::TwoMirror;
};

// reduced_value is the bare bracketed sum; the physical value is reduced_value times
//   ShiftUnit = -lambda^2 omega0 sin(2 theta) / (16 pi)
//   RateUnit  = -lambda^2 omega0^2 sin(2 theta) / (8 pi)
template <class Real>
struct ObservableValueT {
    Real reduced_value{};
    Prefactor unit = Prefactor::ShiftUnit;
    double tail_bound = 0.0;
    std::int64_t n_max = 0;
    bool converged = true;
    bool regime_warning = false;
};

using ObservableValue = ObservableValueT<double>;

ObservableValue two_mirror(Quantity q, const ValidatedConfig& cfg, const SeriesOptions& opts = {});

// Closed form for one plate: kernel(d) - kernel(D), with D = d + 2 z0 (perpendicular)
// or sqrt(d^2 + 4 z0^2) (parallel).
ObservableValue single_mirror(Quantity q, Orientation o, double d, double z0, double a);

// Same for both orientations.
ObservableValue free_space(Quantity q, double d, double a);

// Evaluates whichever model the observable names; the config's L and z0 are ignored where
// the model has no use for them.
ObservableValue evaluate(const Observable& obs, const ValidatedConfig& cfg, const SeriesOptions& opts = {});

enum class A2Mode {
    // Order-a^2 image series summed by parts; its terms grow like n^2, so this is its only finite value.
    AbelRegularized,
    // Plain partial sum of the order-a^2 series up to n_terms, kept for comparison.
    Truncated,
};

struct LowAccelerationOptions {
    std::int64_t n_terms = 100'000;
    A2Mode mode = A2Mode::AbelRegularized;
    SeriesOptions inertial;  // controls the order-a^0 part
};

// Small-acceleration shift for the perpendicular cavity, through order a^2:
//   sum over images of cos(X)/X - (a^2/8) (X cos X - (X^2/3) sin X),
// reported in the same bracket convention as two_mirror. Flags regime_warning when a L >= 0.1.
template <class Real>
ObservableValueT<Real> low_acceleration_shift(const ValidatedConfig& cfg, const LowAccelerationOptions& opts = {});

// Coefficient of a^2 in low_acceleration_shift.
template <class Real>
Real low_acceleration_a2_coefficient(const ValidatedConfig& cfg, const LowAccelerationOptions& opts = {});

double unit_factor(Prefactor unit, const AtomState& state, double omega0);

// Physical shift in the energy unit of omega0, or rate in energy times omega0.
double physical_value(const ObservableValue& obs, const AtomState& state, double omega0);

// Value in units of lambda^2 omega0 / 16 pi (shift) or lambda^2 omega0^2 / 8 pi (rate), as plotted.
double normalized_value(const ObservableValue& obs, const AtomState& state);

}  // namespace resonance
