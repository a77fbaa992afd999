#include "resonance/observables.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "resonance/bigfloat.hpp"
#include "series_detail.hpp"

namespace resonance {

namespace {

using detail::CompensatedSum;
using detail::Cplx;

[[noreturn]] void reject(const std::string& field, const std::string& reason) {
    throw GeometryError(std::vector<GeometryIssue>{{field, reason}});
}

ObservableValue closed_form(Quantity q, double value) {
    ObservableValue v;
    v.reduced_value = value;
    v.unit = q == Quantity::Shift ? Prefactor::ShiftUnit : Prefactor::RateUnit;
    return v;
}

// Number of order-a^2 family terms summed explicitly before the summation-by-parts tail.
// The result does not depend on it; a small value keeps cancellation against the tail mild.
constexpr std::int64_t kA2Direct = 16;

// g(X) = X cos X - (X^2 / 3) sin X, the order-a^2 image term up to the factor -a^2/8.
template <class Real>
Real a2_term(const Real& x) {
    using std::cos;
    using std::sin;
    return x * cos(x) - x * x / 3 * sin(x);
}

template <class Real>
Real perpendicular_image_sum(const ValidatedConfig& cfg, std::int64_t n_terms, Real (*f)(const Real&)) {
    const Real L(cfg.L()), d(cfg.d()), s(2 * cfg.z0() + cfg.d());
    CompensatedSum<Real> acc;
    acc.add(f(d) - f(s));
    for (std::int64_t m = 1; m <= n_terms; ++m) {
        const Real base = 2 * Real(static_cast<double>(m)) * L;
        acc.add(f(base - d) - f(base - s));
        acc.add(f(base + d) - f(base + s));
    }
    return acc.value();
}

template <class Real>
Real inertial_term(const Real& x) {
    using std::cos;
    return cos(x) / x;
}

// Summation-by-parts value of sum_{m >= M} sum_j sigma_j g(2 m L + gamma_j). The family term is
// Re or Im of a plane wave times a polynomial of degree 2 in m, so three boundary terms are exact.
template <class Real>
Real a2_tail(const ValidatedConfig& cfg, std::int64_t M) {
    using C = Cplx<Real>;
    const detail::ImageFamily f = detail::image_family(cfg);
    const Real L(f.L);
    constexpr int order = 3;
    C G[order];
    for (int k = 0; k < order; ++k) {
        const Real m(static_cast<double>(M + k));
        C acc;
        for (int j = 0; j < 4; ++j) {
            const Real x = 2 * m * L + Real(f.gamma[j]);
            const C wave = C::expi(x);
            // Re(x e^{ix}) - Im(x^2 e^{ix}) / 3 = Re((x + i x^2 / 3) e^{ix})
            const C poly{x, x * x / 3};
            acc = acc + Real(f.sigma[j]) * (poly * wave);
        }
        G[k] = acc;
    }
    const C one{Real(1), Real(0)};
    const C w = C::expi(2 * L);
    const C inv = one / (one - w);
    C total, inv_pow = inv;
    for (int k = 0; k < order; ++k) {
        C diff, w_pow = one;
        Real binom(1);
        for (int i = 0; i <= k; ++i) {
            const C term = binom * (w_pow * G[k - i]);
            diff = (i % 2 == 0) ? diff + term : diff - term;
            w_pow = w_pow * w;
            binom = binom * Real(k - i) / Real(i + 1);
        }
        total = total + diff * inv_pow;
        inv_pow = inv_pow * inv;
    }
    return total.re;
}

void require_low_acceleration_geometry(const ValidatedConfig& cfg) {
    if (cfg.orientation() != Orientation::Perpendicular)
        reject("orientation", "the low-acceleration expansion is available for the perpendicular cavity only");
    if (cfg.boundary() != Boundary::TwoMirror) reject("L", "the low-acceleration expansion needs a finite cavity");
}

GeometryConfig inertial_copy(const ValidatedConfig& cfg) {
    GeometryConfig g = cfg.config();
    g.a = 0.0;
    return g;
}

}  // namespace

const char* to_string(Quantity q) { return q == Quantity::Shift ? "shift" : "rate"; }

const char* to_string(Model m) {
    switch (m) {
        case Model::TwoMirror: return "two-mirror";
        case Model::SingleMirror: return "single-mirror";
        case Model::FreeSpace: return "free-space";
        case Model::LowAcceleration: return "low-acc";
    }
    return "?";
}

Quantity parse_quantity(const std::string& text) {
    if (text == "shift") return Quantity::Shift;
    if (text == "rate") return Quantity::Rate;
    reject("quantity", "expected shift or rate, got '" + text + "'");
}

Model parse_model(const std::string& text) {
    for (Model m : {Model::TwoMirror, Model::SingleMirror, Model::FreeSpace, Model::LowAcceleration})
        if (text == to_string(m)) return m;
    reject("model", "expected two-mirror, single-mirror, free-space or low-acc, got '" + text + "'");
}

ObservableValue two_mirror(Quantity q, const ValidatedConfig& cfg, const SeriesOptions& opts) {
    const SumResult sum = bilateral_sum<double>(kernel_kind(q), cfg, opts);
    ObservableValue v = closed_form(q, sum.value);
    v.tail_bound = sum.tail_bound;
    v.n_max = sum.n_max;
    v.converged = sum.converged;
    return v;
}

ObservableValue single_mirror(Quantity q, Orientation o, double d, double z0, double a) {
    if (!(d > 0.0) || !std::isfinite(d)) reject("d", "must be finite and > 0");
    if (!(z0 > 0.0)) reject("z0", "must be > 0");
    const KernelKind kind = kernel_kind(q);
    const double direct = kernel(kind, d, a);
    if (std::isinf(z0)) return closed_form(q, direct);
    const double D = o == Orientation::Perpendicular ? d + 2.0 * z0 : std::hypot(d, 2.0 * z0);
    return closed_form(q, direct - kernel(kind, D, a));
}

ObservableValue free_space(Quantity q, double d, double a) {
    if (!(d > 0.0) || !std::isfinite(d)) reject("d", "must be finite and > 0");
    return closed_form(q, kernel(kernel_kind(q), d, a));
}

ObservableValue evaluate(const Observable& obs, const ValidatedConfig& cfg, const SeriesOptions& opts) {
    switch (obs.model) {
        case Model::TwoMirror: return two_mirror(obs.quantity, cfg, opts);
        case Model::SingleMirror: return single_mirror(obs.quantity, cfg.orientation(), cfg.d(), cfg.z0(), cfg.a());
        case Model::FreeSpace: return free_space(obs.quantity, cfg.d(), cfg.a());
        case Model::LowAcceleration: {
            if (obs.quantity != Quantity::Shift)
                reject("model", "the low-acceleration expansion exists for the shift only");
            LowAccelerationOptions lo;
            lo.inertial = opts;
            return low_acceleration_shift<double>(cfg, lo);
        }
    }
    reject("model", "unknown model");
}

template <class Real>
Real low_acceleration_a2_coefficient(const ValidatedConfig& cfg, const LowAccelerationOptions& opts) {
    require_low_acceleration_geometry(cfg);
    Real g_sum;
    if (opts.mode == A2Mode::Truncated) {
        g_sum = perpendicular_image_sum<Real>(cfg, opts.n_terms, &a2_term<Real>);
    } else {
        const std::int64_t direct = std::min(opts.n_terms, kA2Direct);
        g_sum = perpendicular_image_sum<Real>(cfg, direct, &a2_term<Real>) + a2_tail<Real>(cfg, direct + 1);
    }
    return -g_sum / 8;
}

template <class Real>
ObservableValueT<Real> low_acceleration_shift(const ValidatedConfig& cfg, const LowAccelerationOptions& opts) {
    require_low_acceleration_geometry(cfg);
    if (opts.n_terms < 1) reject("n_terms", "must be >= 1");
    const ValidatedConfig inertial = validate(inertial_copy(cfg));

    ObservableValueT<Real> v;
    v.unit = Prefactor::ShiftUnit;
    Real base;
    if (opts.mode == A2Mode::Truncated) {
        base = perpendicular_image_sum<Real>(inertial, opts.n_terms, &inertial_term<Real>);
        v.n_max = opts.n_terms;
        v.tail_bound = tail_bound(inertial, KernelKind::Cosine, opts.n_terms);
        v.converged = false;  // the order-a^2 partial sums do not settle
    } else {
        const SumResultT<Real> s = bilateral_sum<Real>(KernelKind::Cosine, inertial, opts.inertial);
        base = s.value;
        v.n_max = s.n_max;
        v.tail_bound = s.tail_bound;
        v.converged = s.converged;
    }
    const Real a(cfg.a());
    v.reduced_value = base + a * a * low_acceleration_a2_coefficient<Real>(cfg, opts);
    v.regime_warning = cfg.a() * cfg.L() >= 0.1;
    return v;
}

template ObservableValueT<double> low_acceleration_shift<double>(const ValidatedConfig&, const LowAccelerationOptions&);
template ObservableValueT<BigFloat> low_acceleration_shift<BigFloat>(const ValidatedConfig&,
                                                                     const LowAccelerationOptions&);
template double low_acceleration_a2_coefficient<double>(const ValidatedConfig&, const LowAccelerationOptions&);
template BigFloat low_acceleration_a2_coefficient<BigFloat>(const ValidatedConfig&, const LowAccelerationOptions&);

double unit_factor(Prefactor unit, const AtomState& state, double omega0) {
    check_state(state);
    const double s2 = entanglement_factor(state);
    const double l2 = state.lambda * state.lambda;
    if (unit == Prefactor::ShiftUnit) return -l2 * omega0 * s2 / (16.0 * std::numbers::pi);
    return -l2 * omega0 * omega0 * s2 / (8.0 * std::numbers::pi);
}

double physical_value(const ObservableValue& obs, const AtomState& state, double omega0) {
    const double factor = unit_factor(obs.unit, state, omega0);
    if (factor == 0.0) return 0.0;
    return obs.reduced_value * factor;
}

double normalized_value(const ObservableValue& obs, const AtomState& state) {
    check_state(state);
    const double s2 = entanglement_factor(state);
    if (s2 == 0.0) return 0.0;
    return -s2 * obs.reduced_value;
}

}  // namespace resonance
