#include "resonance/image_series.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <limits>
#include <numbers>
#include <vector>

#include "resonance/bigfloat.hpp"
#include "series_detail.hpp"

namespace resonance {

namespace {

using detail::CompensatedSum;
using detail::Cplx;
using detail::ImageFamily;

void require_cavity(const ValidatedConfig& cfg) {
    if (cfg.boundary() != Boundary::TwoMirror)
        throw GeometryError(std::vector<GeometryIssue>{{"L", "image series needs a finite plate separation"}});
}

template <class Real>
void image_distances(const ValidatedConfig& cfg, std::int64_t n, Real& z1, Real& z2) {
    using std::abs;
    using std::sqrt;
    const Real L(cfg.L()), d(cfg.d()), z0(cfg.z0());
    const Real nn(static_cast<double>(n));
    if (cfg.orientation() == Orientation::Perpendicular) {
        z1 = abs(2 * nn * L - d);
        z2 = abs(2 * nn * L - 2 * z0 - d);
    } else {
        const Real x2 = 2 * (nn * L - z0);
        z1 = sqrt(d * d + 4 * nn * nn * L * L);
        z2 = sqrt(d * d + x2 * x2);
    }
}

template <class Real>
Real bracket(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n) {
    Real z1, z2;
    image_distances(cfg, n, z1, z2);
    const Real a(cfg.a());
    return kernel(kind, z1, a) - kernel(kind, z2, a);
}

// |1 - exp(2iL)|; zero when L is a multiple of pi and the inertial tail cannot be summed by parts.
double abel_gap(double L) { return 2.0 * std::abs(std::sin(L)); }

// Derivative-growth constant K in |h^(p)| <= K p! (2L)^p / x^(p+1), where h is one image
// term with its carrier wave removed. Infinite when the Cauchy circle would reach a branch point.
double cauchy_constant(const ImageFamily& f, double y, int p) {
    if (f.rho == 0.0) return 1.0;
    if (y < 4.0 * f.rho) return std::numeric_limits<double>::infinity();
    const double c = 1.0 + std::sqrt(3.0) / 2.0;
    return std::ldexp(1.0, p) * (4.0 / std::sqrt(3.0)) * std::exp(2.0 * f.rho * f.rho / (c * y));
}

double inertial_dirichlet_bound(const ValidatedConfig& cfg, std::int64_t n_max) {
    const ImageFamily f = detail::image_family(cfg);
    const double gap = abel_gap(f.L);
    if (gap == 0.0) return std::numeric_limits<double>::infinity();
    const double M = static_cast<double>(n_max) + 1.0;
    double total = 0.0;
    for (int j = 0; j < 4; ++j) {
        const double y = 2.0 * M * f.L + f.gamma[j];
        if (f.rho == 0.0) {
            total += 2.0 / y;
        } else {
            const double K = cauchy_constant(f, y, 1);
            total += 2.0 / y + K * (2.0 * f.L / (y * y) + 1.0 / y);
        }
    }
    return total / gap;
}

// Sum over m >= n_max + 1 of the family term, by repeated summation by parts, without the remainder.
template <class Real>
Real inertial_tail(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max, int order) {
    using C = Cplx<Real>;
    const ImageFamily f = detail::image_family(cfg);
    const Real L(f.L), rho(f.rho);
    const std::int64_t M = n_max + 1;
    // Offsets rebuilt in Real so that 2 z0 + d is not rounded to double.
    const Real d(cfg.d()), two_z0 = 2 * Real(cfg.z0());
    const std::array<Real, 4> gamma = cfg.orientation() == Orientation::Perpendicular
                                          ? std::array<Real, 4>{-d, d, -(two_z0 + d), two_z0 + d}
                                          : std::array<Real, 4>{Real(0), Real(0), -two_z0, two_z0};

    // Complex family values F_c(m) = sum_j sigma_j exp(i z_j) / z_j for m = M .. M + order - 1.
    std::vector<C> Fc(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) {
        const Real m(static_cast<double>(M + k));
        C acc;
        for (int j = 0; j < 4; ++j) {
            using std::sqrt;
            const Real x = 2 * m * L + gamma[static_cast<std::size_t>(j)];
            const Real z = f.rho == 0.0 ? x : Real(sqrt(rho * rho + x * x));
            const C term = C::expi(z);
            acc = acc + Real(f.sigma[j]) / z * term;
        }
        Fc[static_cast<std::size_t>(k)] = acc;
    }

    const C w = C::expi(2 * L);
    const C one{Real(1), Real(0)};
    const C inv = one / (one - w);
    C total;
    C inv_pow = inv;
    for (int k = 0; k < order; ++k) {
        // w^(M+k) times the k-th backward difference of h at M + k, expressed through F_c.
        C diff;
        C w_pow = one;
        Real binom(1);
        for (int i = 0; i <= k; ++i) {
            const C term = binom * (w_pow * Fc[static_cast<std::size_t>(k - i)]);
            diff = (i % 2 == 0) ? diff + term : diff - term;
            w_pow = w_pow * w;
            binom = binom * Real(k - i) / Real(i + 1);
        }
        total = total + diff * inv_pow;
        inv_pow = inv_pow * inv;
    }
    return kind == KernelKind::Cosine ? total.re : total.im;
}

// Smallest N in [1, cap] with bound(N) <= tol, or cap + 1 if none.
template <class Bound>
std::int64_t first_below(const Bound& bound, double tol, std::int64_t cap) {
    std::int64_t hi = 1;
    while (!(bound(hi) <= tol)) {
        if (hi >= cap) return cap + 1;
        hi = std::min(cap, hi * 2);
    }
    std::int64_t lo = hi / 2;  // bound(lo) > tol unless lo == 0
    if (lo < 1) return hi;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (bound(mid) <= tol)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::string format_cap_message(double tol, std::int64_t cap, double reached) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "bilateral sum did not reach tol %.3g within %lld terms (bound there %.3g)", tol,
                  static_cast<long long>(cap), reached);
    return buf;
}

}  // namespace

ImagePair image_pair(const ValidatedConfig& cfg, std::int64_t n) {
    require_cavity(cfg);
    ImagePair p;
    p.n = n;
    image_distances<double>(cfg, n, p.z_first, p.z_second);
    return p;
}

double tail_bound(const ValidatedConfig& cfg, KernelKind /*kind*/, std::int64_t n_max) {
    require_cavity(cfg);
    if (n_max < 1) throw std::invalid_argument("tail_bound needs n_max >= 1");
    const double a = cfg.a();
    if (a == 0.0) return inertial_dirichlet_bound(cfg, n_max);

    // Each dropped bracket is at most 2 z0 times the slope bound at its nearest image, and
    // the slope bound decreases, so the sum is dominated by an integral with a closed form.
    const ImageFamily f = detail::image_family(cfg);
    const double Y = 2.0 * static_cast<double>(n_max) * f.L - f.reach;
    const double inv_y2 = 1.0 / (Y * Y);
    const double log_part = 0.5 * std::log1p(4.0 / (a * a * Y * Y));
    const double alg_part = 2.0 * inv_y2 / (std::sqrt(inv_y2 + 0.25 * a * a) + 0.5 * a);
    return (2.0 * cfg.z0() / f.L) * (log_part + alg_part);
}

double abel_remainder_bound(const ValidatedConfig& cfg, std::int64_t n_max, int order) {
    require_cavity(cfg);
    if (order < 1) throw std::invalid_argument("abel order must be >= 1");
    const ImageFamily f = detail::image_family(cfg);
    const double gap = abel_gap(f.L);
    if (gap == 0.0) return std::numeric_limits<double>::infinity();
    const double M = static_cast<double>(n_max) + 1.0;
    const double two_l = 2.0 * f.L;
    double total = 0.0;
    for (int j = 0; j < 4; ++j) {
        const double y = two_l * M + f.gamma[j];
        const double K = cauchy_constant(f, y, order);
        // (2L)^p p! / (y^(p+1) |1-w|^p) and the matching integral term, in log form to avoid overflow.
        const double log_common = order * std::log(two_l / (y * gap)) + std::lgamma(order + 1.0);
        total += K * std::exp(log_common) * (1.0 / y + 1.0 / (two_l * order));
    }
    return total;
}

template <class Real>
Real partial_sum(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max) {
    require_cavity(cfg);
    CompensatedSum<Real> acc;
    acc.add(bracket<Real>(kind, cfg, 0));
    for (std::int64_t m = 1; m <= n_max; ++m) {
        acc.add(bracket<Real>(kind, cfg, m));
        acc.add(bracket<Real>(kind, cfg, -m));
    }
    return acc.value();
}

template <class Real>
SumResultT<Real> bilateral_sum(KernelKind kind, const ValidatedConfig& cfg, const SeriesOptions& opts) {
    require_cavity(cfg);
    if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (opts.max_terms < 1) throw std::invalid_argument("max_terms must be >= 1");

    const bool inertial = cfg.a() == 0.0;
    auto bound = [&](std::int64_t n) {
        return inertial ? abel_remainder_bound(cfg, n, opts.abel_order) : tail_bound(cfg, kind, n);
    };

    SumResultT<Real> result;
    std::int64_t n = first_below(bound, opts.tol, opts.max_terms);
    if (n > opts.max_terms) {
        const double reached = bound(opts.max_terms);
        if (opts.throw_on_cap)
            throw ConvergenceError(format_cap_message(opts.tol, opts.max_terms, reached), opts.max_terms, reached);
        n = opts.max_terms;
    }
    result.n_max = n;
    result.tail_bound = bound(n);
    result.converged = result.tail_bound <= opts.tol;
    result.value = partial_sum<Real>(kind, cfg, n);
    result.terms_evaluated = 2 * n + 1;
    if (inertial) {
        result.value += inertial_tail<Real>(kind, cfg, n, opts.abel_order);
        result.terms_evaluated += opts.abel_order;
    }
    return result;
}

template SumResultT<double> bilateral_sum<double>(KernelKind, const ValidatedConfig&, const SeriesOptions&);
template SumResultT<BigFloat> bilateral_sum<BigFloat>(KernelKind, const ValidatedConfig&, const SeriesOptions&);
template double partial_sum<double>(KernelKind, const ValidatedConfig&, std::int64_t);
template BigFloat partial_sum<BigFloat>(KernelKind, const ValidatedConfig&, std::int64_t);

}  // namespace resonance
