#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace resonance {

enum class KernelKind { Cosine, Sine };

const char* to_string(KernelKind k);

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline void check_kernel_domain(bool z_ok, bool a_ok) {
    if (!z_ok) throw DomainError("kernel argument z must be > 0");
    if (!a_ok) throw DomainError("acceleration a must be >= 0");
}

// Below this value of a*z the closed form (2/a) asinh(a z / 2) cancels badly in double.
inline constexpr double kTaylorSwitch = 1e-4;

}  // namespace detail

// T(z, a) = (2/a) asinh(a z / 2), the accumulated proper-time phase; equals z at a = 0.
template <class Real>
Real phase(const Real& z, const Real& a) {
    using std::asinh;
    detail::check_kernel_domain(z > 0, a >= 0);
    if (a == 0) return z;
    const Real x = a * z;
    if constexpr (std::is_same_v<Real, double>) {
        if (x < detail::kTaylorSwitch) {
            const double x2 = x * x;
            return z * (1.0 + x2 * (-1.0 / 24.0 + x2 * (3.0 / 640.0 + x2 * (-5.0 / 7168.0))));
        }
    }
    return Real(2) / a * asinh(x / 2);
}

// E(z, a) = 1 / (z sqrt(1 + z^2 a^2 / 4)).
template <class Real>
Real envelope(const Real& z, const Real& a) {
    using std::sqrt;
    detail::check_kernel_domain(z > 0, a >= 0);
    if (a == 0) return Real(1) / z;
    const Real h = z * a / 2;
    return Real(1) / (z * sqrt(1 + h * h));
}

template <class Real>
Real kernel(KernelKind kind, const Real& z, const Real& a) {
    using std::cos;
    using std::sin;
    const Real t = phase(z, a);
    const Real e = envelope(z, a);
    return kind == KernelKind::Cosine ? Real(cos(t) * e) : Real(sin(t) * e);
}

// Upper bound on |d kernel / dz|, valid for both kinds and decreasing in z.
inline double kernel_slope_bound(double z, double a) {
    const double q = 0.25 * z * z * a * a;
    return 1.0 / (z * (1.0 + q)) + 2.0 / (z * z * std::sqrt(1.0 + q));
}

}  // namespace resonance
