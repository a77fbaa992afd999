#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <vector>

#include "mpfr_util.hpp"
#include "resonance/oracle.hpp"

namespace resonance::oracle {

namespace {

using MP = boost::multiprecision::mpfr_float;

// Sets the working precision of MP for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits) : saved_(MP::default_precision()) { MP::default_precision(digits); }
    ~PrecisionGuard() { MP::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

// Truncated Taylor series f(x0 + t) = sum_k c[k] t^k, with the usual arithmetic.
struct Jet {
    std::vector<MP> c;

    explicit Jet(std::size_t order) : c(order + 1, MP(0)) {}
    static Jet variable(const MP& x0, const MP& slope, std::size_t order) {
        Jet j(order);
        j.c[0] = x0;
        if (order >= 1) j.c[1] = slope;
        return j;
    }
    std::size_t order() const { return c.size() - 1; }

    friend Jet operator+(Jet x, const Jet& y) {
        for (std::size_t k = 0; k < x.c.size(); ++k) x.c[k] += y.c[k];
        return x;
    }
    friend Jet operator-(Jet x, const Jet& y) {
        for (std::size_t k = 0; k < x.c.size(); ++k) x.c[k] -= y.c[k];
        return x;
    }
    friend Jet operator*(const MP& s, Jet x) {
        for (auto& v : x.c) v *= s;
        return x;
    }
    friend Jet operator+(Jet x, const MP& s) {
        x.c[0] += s;
        return x;
    }
    friend Jet operator*(const Jet& x, const Jet& y) {
        Jet r(x.order());
        for (std::size_t k = 0; k <= r.order(); ++k)
            for (std::size_t i = 0; i <= k; ++i) r.c[k] += x.c[i] * y.c[k - i];
        return r;
    }
    friend Jet operator/(const Jet& x, const Jet& y) {
        Jet r(x.order());
        for (std::size_t k = 0; k <= r.order(); ++k) {
            MP acc = x.c[k];
            for (std::size_t i = 1; i <= k; ++i) acc -= y.c[i] * r.c[k - i];
            r.c[k] = acc / y.c[0];
        }
        return r;
    }
};

Jet sqrt(const Jet& x) {
    Jet r(x.order());
    r.c[0] = boost::multiprecision::sqrt(x.c[0]);
    for (std::size_t k = 1; k <= r.order(); ++k) {
        MP acc = x.c[k];
        for (std::size_t i = 1; i < k; ++i) acc -= r.c[i] * r.c[k - i];
        r.c[k] = acc / (2 * r.c[0]);
    }
    return r;
}

Jet derivative(const Jet& x) {
    Jet r(x.order());
    for (std::size_t k = 1; k <= x.order(); ++k) r.c[k - 1] = x.c[k] * static_cast<unsigned>(k);
    return r;
}

// asinh(u) from its derivative u' / sqrt(1 + u^2).
Jet asinh(const Jet& u) {
    const Jet q = derivative(u) / sqrt(u * u + MP(1));
    Jet r(u.order());
    r.c[0] = boost::multiprecision::asinh(u.c[0]);
    for (std::size_t k = 1; k <= r.order(); ++k) r.c[k] = q.c[k - 1] / static_cast<unsigned>(k);
    return r;
}

void sin_cos(const Jet& u, Jet& s, Jet& c) {
    s = Jet(u.order());
    c = Jet(u.order());
    s.c[0] = boost::multiprecision::sin(u.c[0]);
    c.c[0] = boost::multiprecision::cos(u.c[0]);
    for (std::size_t k = 1; k <= u.order(); ++k) {
        MP as = 0, ac = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            const MP iu = u.c[i] * static_cast<unsigned>(i);
            as += iu * c.c[k - i];
            ac -= iu * s.c[k - i];
        }
        s.c[k] = as / static_cast<unsigned>(k);
        c.c[k] = ac / static_cast<unsigned>(k);
    }
}

// Taylor series in t of phi(x0 + t) = kernel(sqrt(rho^2 + (x0 + t)^2)), a > 0.
Jet image_kernel_jet(KernelKind kind, const MP& x0, const MP& rho, const MP& a, std::size_t order) {
    const Jet x = Jet::variable(x0, MP(1), order);
    const Jet z = rho == 0 ? x : sqrt(x * x + rho * rho);
    const Jet h = (a / 2) * z;
    const Jet root = sqrt(h * h + MP(1));
    const Jet phase = (2 / a) * asinh(h);
    Jet s(order), c(order);
    sin_cos(phase, s, c);
    const Jet wave = kind == KernelKind::Cosine ? c : s;
    return wave / (z * root);
}

struct Family {
    MP L, rho;
    MP gamma[4];
    int sigma[4] = {+1, +1, -1, -1};
};

Family family(const ValidatedConfig& cfg) {
    Family f;
    f.L = MP(cfg.L());
    const MP d(cfg.d()), z0(cfg.z0());
    if (cfg.orientation() == Orientation::Perpendicular) {
        const MP s = 2 * z0 + d;
        f.rho = 0;
        f.gamma[0] = -d;
        f.gamma[1] = d;
        f.gamma[2] = -s;
        f.gamma[3] = s;
    } else {
        f.rho = d;
        f.gamma[0] = 0;
        f.gamma[1] = 0;
        f.gamma[2] = -2 * z0;
        f.gamma[3] = 2 * z0;
    }
    return f;
}

MP direct_part(KernelKind kind, const ValidatedConfig& cfg, int digits, std::int64_t n_direct) {
    MpfrVar acc(digits_to_bits(digits));
    brute_force_range(kind, cfg, digits_to_bits(digits), 0, n_direct + 1, acc.v);
    MP out;
    mpfr_set(out.backend().data(), acc.v, MPFR_RNDN);
    return out;
}

OracleReport finish(const MP& value, std::int64_t n, Method m, int digits) {
    OracleReport r;
    r.value = to_decimal(value.backend().data(), digits);
    r.n_max_used = n;
    r.method = m;
    r.precision_digits = digits;
    return r;
}

void check_request(const ValidatedConfig& cfg, const LimitOptions& opts) {
    if (cfg.boundary() != Boundary::TwoMirror)
        throw GeometryError(std::vector<GeometryIssue>{{"L", "limit oracle needs a finite cavity"}});
    if (opts.precision_digits < 20) throw std::invalid_argument("precision_digits must be >= 20");
}

}  // namespace

OracleReport euler_maclaurin_sum(KernelKind kind, const ValidatedConfig& cfg, const LimitOptions& opts) {
    check_request(cfg, opts);
    if (cfg.a() <= 0.0) throw std::invalid_argument("euler_maclaurin_sum needs a > 0");
    const int digits = opts.precision_digits;
    const PrecisionGuard guard(static_cast<unsigned>(digits + 10));

    // Start the smooth tail where one index step advances the phase by at most max_phase_step.
    const double a = cfg.a(), L = cfg.L();
    const double ratio = 2.0 * L / opts.max_phase_step;
    const double z_needed = ratio > 1.0 ? (2.0 / a) * std::sqrt(ratio * ratio - 1.0) : 0.0;
    const double reach = cfg.orientation() == Orientation::Perpendicular ? 2.0 * cfg.z0() + cfg.d() : 2.0 * cfg.z0();
    const std::int64_t n0 =
        std::max<std::int64_t>(opts.min_direct, static_cast<std::int64_t>(std::ceil((z_needed + reach) / (2.0 * L))) + 1);

    // Direct brackets for |n| < n0.
    MP total = direct_part(kind, cfg, digits, n0 - 1);

    const Family f = family(cfg);
    const MP amp(a);
    const MP Z = 2 * MP(static_cast<double>(n0)) * f.L;
    const std::size_t order = static_cast<std::size_t>(std::max(2 * opts.em_order + 2, 60));

    // F(m) near n0 as a series in (m - n0), and the tail integral of F from n0 to infinity.
    Jet F(order);
    MP integral = 0;
    for (int j = 0; j < 4; ++j) {
        const Jet phi = image_kernel_jet(kind, Z + f.gamma[j], f.rho, amp, order);
        // int_Z^{Z + gamma} phi = -sum_k c_k (-gamma)^(k+1) / (k+1); the infinite parts cancel.
        MP piece = 0, power = -f.gamma[j];
        for (std::size_t k = 0; k <= order; ++k) {
            piece += phi.c[k] * power / static_cast<unsigned>(k + 1);
            power *= -f.gamma[j];
        }
        integral += f.sigma[j] * piece;  // minus sign of the integral and of the reordering cancel
        MP scale = 1;
        for (std::size_t k = 0; k <= order; ++k) {
            F.c[k] += f.sigma[j] * phi.c[k] * scale;
            scale *= 2 * f.L;
        }
    }
    integral /= 2 * f.L;

    // sum_{m >= n0} F(m) = int_{n0}^inf F + F(n0)/2 - sum_k B_2k/(2k)! F^(2k-1)(n0)
    MP tail = integral + F.c[0] / 2;
    for (int k = 1; k <= opts.em_order; ++k) {
        const MP b = boost::math::bernoulli_b2n<MP>(k);
        // F^(2k-1)(n0) / (2k)! = c_{2k-1} (2k-1)! / (2k)! = c_{2k-1} / (2k)
        tail -= b * F.c[static_cast<std::size_t>(2 * k - 1)] / (2 * k);
    }
    total += tail;
    return finish(total, n0 - 1, Method::EulerMaclaurin, digits);
}

OracleReport abel_limit_sum(KernelKind kind, const ValidatedConfig& cfg, const LimitOptions& opts) {
    check_request(cfg, opts);
    if (cfg.a() != 0.0) throw std::invalid_argument("abel_limit_sum needs a = 0");
    if (std::sin(cfg.L()) == 0.0) throw std::invalid_argument("inertial tail undefined when sin L = 0");
    const int digits = opts.precision_digits;
    const PrecisionGuard guard(static_cast<unsigned>(digits + 10));

    const std::int64_t n_direct = opts.min_direct;
    MP total = direct_part(kind, cfg, digits, n_direct);

    const Family f = family(cfg);
    const int p = opts.abel_order;
    const std::int64_t M = n_direct + 1;
    // Carrier-free image terms h(m) = sum_j sigma_j exp(i (z_j - 2 m L)) / z_j, kept as (re, im).
    std::vector<MP> h_re(static_cast<std::size_t>(p)), h_im(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
        const MP m(static_cast<double>(M + k));
        MP re = 0, im = 0;
        for (int j = 0; j < 4; ++j) {
            const MP x = 2 * m * f.L + f.gamma[j];
            const MP z = boost::multiprecision::sqrt(f.rho * f.rho + x * x);
            const MP ph = z - 2 * m * f.L;
            re += f.sigma[j] * boost::multiprecision::cos(ph) / z;
            im += f.sigma[j] * boost::multiprecision::sin(ph) / z;
        }
        h_re[static_cast<std::size_t>(k)] = re;
        h_im[static_cast<std::size_t>(k)] = im;
    }
    // sum_{m >= M} w^m h(m) = sum_k w^(M+k) (nabla^k h)(M+k) / (1-w)^(k+1) + remainder, w = exp(2iL).
    const MP two_l = 2 * f.L;
    const MP wr = boost::multiprecision::cos(two_l), wi = boost::multiprecision::sin(two_l);
    const MP gr = 1 - wr, gi = -wi;  // 1 - w
    const MP gn = gr * gr + gi * gi;
    const MP ir = gr / gn, ii = -gi / gn;  // 1 / (1 - w)
    MP tr = 0, ti = 0;
    MP pr = ir, pi = ii;  // (1-w)^-(k+1)
    for (int k = 0; k < p; ++k) {
        // k-th backward difference of h at M + k
        MP dr = 0, di = 0, binom = 1;
        for (int i = 0; i <= k; ++i) {
            const auto idx = static_cast<std::size_t>(k - i);
            const MP sgn = (i % 2 == 0) ? binom : MP(-binom);
            dr += sgn * h_re[idx];
            di += sgn * h_im[idx];
            binom = binom * (k - i) / (i + 1);
        }
        // times w^(M+k)
        const MP phase = two_l * MP(static_cast<double>(M + k));
        const MP cr = boost::multiprecision::cos(phase), ci = boost::multiprecision::sin(phase);
        const MP er = dr * cr - di * ci, ei = dr * ci + di * cr;
        tr += er * pr - ei * pi;
        ti += er * pi + ei * pr;
        const MP npr = pr * ir - pi * ii, npi = pr * ii + pi * ir;
        pr = npr;
        pi = npi;
    }
    total += kind == KernelKind::Cosine ? tr : ti;
    return finish(total, n_direct, Method::AbelLimit, digits);
}

OracleReport limit_sum(KernelKind kind, const ValidatedConfig& cfg, const LimitOptions& opts) {
    return cfg.a() == 0.0 ? abel_limit_sum(kind, cfg, opts) : euler_maclaurin_sum(kind, cfg, opts);
}

}  // namespace resonance::oracle
