#pragma once

#include <array>
#include <cmath>

#include "resonance/geometry.hpp"

namespace resonance::detail {

// Error-free-transformation accumulator (Neumaier's variant of Kahan summation).
template <class Real>
class CompensatedSum {
public:
    void add(const Real& x) {
        using std::abs;
        const Real t = sum_ + x;
        if (abs(sum_) >= abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    Real value() const { return sum_ + comp_; }

private:
    Real sum_{0};
    Real comp_{0};
};

template <class Real>
struct Cplx {
    Real re{0};
    Real im{0};

    friend Cplx operator+(const Cplx& x, const Cplx& y) { return {x.re + y.re, x.im + y.im}; }
    friend Cplx operator-(const Cplx& x, const Cplx& y) { return {x.re - y.re, x.im - y.im}; }
    friend Cplx operator*(const Cplx& x, const Cplx& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend Cplx operator*(const Real& s, const Cplx& x) { return {s * x.re, s * x.im}; }
    friend Cplx operator/(const Cplx& x, const Cplx& y) {
        const Real den = y.re * y.re + y.im * y.im;
        return {(x.re * y.re + x.im * y.im) / den, (x.im * y.re - x.re * y.im) / den};
    }
    static Cplx expi(const Real& phi) {
        using std::cos;
        using std::sin;
        return {cos(phi), sin(phi)};
    }
};

// For every m >= 1 the brackets n = +m and n = -m combine into
//   F(m) = sum_j sigma_j k(sqrt(rho^2 + (2 m L + gamma_j)^2)).
struct ImageFamily {
    double L = 0.0;
    double rho = 0.0;
    std::array<double, 4> gamma{};
    std::array<int, 4> sigma{+1, +1, -1, -1};
    // Smallest image distance at index m is at least 2 m L - reach.
    double reach = 0.0;
};

inline ImageFamily image_family(const ValidatedConfig& cfg) {
    ImageFamily f;
    f.L = cfg.L();
    if (cfg.orientation() == Orientation::Perpendicular) {
        const double s = 2.0 * cfg.z0() + cfg.d();
        f.rho = 0.0;
        f.gamma = {-cfg.d(), cfg.d(), -s, s};
        f.reach = s;
    } else {
        f.rho = cfg.d();
        f.gamma = {0.0, 0.0, -2.0 * cfg.z0(), 2.0 * cfg.z0()};
        f.reach = 2.0 * cfg.z0();
    }
    return f;
}

}  // namespace resonance::detail
