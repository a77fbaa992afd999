#include <mpfr.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "mpfr_util.hpp"
#include "resonance/oracle.hpp"

namespace resonance::oracle {

namespace {

// Scratch registers for one kernel evaluation; allocated once per chunk.
struct KernelWorkspace {
    explicit KernelWorkspace(mpfr_prec_t prec) {
        mpfr_inits2(prec, z1, z2, t, s, e, acc, a, half_a, two_over_a, d, L, z0, tmp, nullptr);
    }
    ~KernelWorkspace() { mpfr_clears(z1, z2, t, s, e, acc, a, half_a, two_over_a, d, L, z0, tmp, nullptr); }
    KernelWorkspace(const KernelWorkspace&) = delete;
    KernelWorkspace& operator=(const KernelWorkspace&) = delete;

    mpfr_t z1, z2, t, s, e, acc, a, half_a, two_over_a, d, L, z0, tmp;
    bool inertial = false;
};

void load_config(KernelWorkspace& w, const ValidatedConfig& cfg) {
    mpfr_set_d(w.a, cfg.a(), MPFR_RNDN);
    mpfr_set_d(w.d, cfg.d(), MPFR_RNDN);
    mpfr_set_d(w.L, cfg.L(), MPFR_RNDN);
    mpfr_set_d(w.z0, cfg.z0(), MPFR_RNDN);
    w.inertial = cfg.a() == 0.0;
    if (!w.inertial) {
        mpfr_div_2ui(w.half_a, w.a, 1, MPFR_RNDN);
        mpfr_ui_div(w.two_over_a, 2, w.a, MPFR_RNDN);
    }
}

// out = kernel(kind, z); clobbers t, s, e.
void kernel_mp(KernelKind kind, KernelWorkspace& w, mpfr_t out, const mpfr_t z) {
    if (w.inertial) {
        mpfr_set(w.t, z, MPFR_RNDN);
        mpfr_ui_div(w.e, 1, z, MPFR_RNDN);
    } else {
        mpfr_mul(w.t, z, w.half_a, MPFR_RNDN);           // t = a z / 2
        mpfr_sqr(w.s, w.t, MPFR_RNDN);
        mpfr_add_ui(w.s, w.s, 1, MPFR_RNDN);
        mpfr_sqrt(w.s, w.s, MPFR_RNDN);                  // s = sqrt(1 + t^2)
        mpfr_mul(w.e, z, w.s, MPFR_RNDN);
        mpfr_ui_div(w.e, 1, w.e, MPFR_RNDN);             // e = 1 / (z s)
        if (mpfr_cmp_d(w.t, 1e-3) > 0) {
            mpfr_add(w.t, w.t, w.s, MPFR_RNDN);          // asinh t = log(t + s), reusing s
            mpfr_log(w.t, w.t, MPFR_RNDN);
        } else {
            mpfr_asinh(w.t, w.t, MPFR_RNDN);
        }
        mpfr_mul(w.t, w.t, w.two_over_a, MPFR_RNDN);
    }
    if (kind == KernelKind::Cosine)
        mpfr_cos(out, w.t, MPFR_RNDN);
    else
        mpfr_sin(out, w.t, MPFR_RNDN);
    mpfr_mul(out, out, w.e, MPFR_RNDN);
}

// Sets z1, z2 to the image distances of index n.
void image_mp(KernelWorkspace& w, Orientation o, long n) {
    if (o == Orientation::Perpendicular) {
        mpfr_mul_si(w.tmp, w.L, 2 * n, MPFR_RNDN);       // exact: 2n is an integer and L has 53 bits
        mpfr_sub(w.z1, w.tmp, w.d, MPFR_RNDN);
        mpfr_abs(w.z1, w.z1, MPFR_RNDN);
        mpfr_mul_2ui(w.z2, w.z0, 1, MPFR_RNDN);
        mpfr_add(w.z2, w.z2, w.d, MPFR_RNDN);
        mpfr_sub(w.z2, w.tmp, w.z2, MPFR_RNDN);
        mpfr_abs(w.z2, w.z2, MPFR_RNDN);
    } else {
        mpfr_sqr(w.tmp, w.d, MPFR_RNDN);
        mpfr_mul_si(w.z1, w.L, 2 * n, MPFR_RNDN);
        mpfr_sqr(w.z1, w.z1, MPFR_RNDN);
        mpfr_add(w.z1, w.z1, w.tmp, MPFR_RNDN);
        mpfr_sqrt(w.z1, w.z1, MPFR_RNDN);
        mpfr_mul_si(w.z2, w.L, n, MPFR_RNDN);
        mpfr_sub(w.z2, w.z2, w.z0, MPFR_RNDN);
        mpfr_mul_2ui(w.z2, w.z2, 1, MPFR_RNDN);
        mpfr_sqr(w.z2, w.z2, MPFR_RNDN);
        mpfr_add(w.z2, w.z2, w.tmp, MPFR_RNDN);
        mpfr_sqrt(w.z2, w.z2, MPFR_RNDN);
    }
}

// Adds bracket(n) for every n in the chunk {+m, -m : m in [m_lo, m_hi)} (or n = 0 when m_lo = 0).
void sum_chunk(KernelKind kind, const ValidatedConfig& cfg, mpfr_prec_t prec, std::int64_t m_lo,
               std::int64_t m_hi, mpfr_t out) {
    KernelWorkspace w(prec);
    load_config(w, cfg);
    MpfrVar k1(prec), k2(prec);
    mpfr_set_zero(out, 1);
    auto add_bracket = [&](long n) {
        image_mp(w, cfg.orientation(), n);
        kernel_mp(kind, w, k1.v, w.z1);
        kernel_mp(kind, w, k2.v, w.z2);
        mpfr_sub(k1.v, k1.v, k2.v, MPFR_RNDN);
        mpfr_add(out, out, k1.v, MPFR_RNDN);
    };
    for (std::int64_t m = m_lo; m < m_hi; ++m) {
        if (m == 0) {
            add_bracket(0);
            continue;
        }
        add_bracket(static_cast<long>(m));
        add_bracket(-static_cast<long>(m));
    }
}

}  // namespace

void brute_force_range(KernelKind kind, const ValidatedConfig& cfg, mpfr_prec_t prec, std::int64_t m_lo,
                       std::int64_t m_hi, mpfr_t out) {
    sum_chunk(kind, cfg, prec, m_lo, m_hi, out);
}

namespace {

OracleReport brute_force_impl(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max,
                              const BruteForceOptions& opts, bool parallel) {
    if (cfg.boundary() != Boundary::TwoMirror) throw GeometryError(std::vector<GeometryIssue>{{"L", "brute force needs a finite cavity"}});
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    if (opts.precision_digits < 15) throw std::invalid_argument("precision_digits must be >= 15");
    const double evaluations = 4.0 * static_cast<double>(n_max) + 2.0;
    if (evaluations > opts.max_kernel_evaluations)
        throw OracleBudgetError("brute force request of " + std::to_string(evaluations) +
                                " kernel evaluations exceeds the configured budget");

    const mpfr_prec_t prec = digits_to_bits(opts.precision_digits);
    const std::int64_t chunk = std::max<std::int64_t>(1, opts.chunk);
    const std::int64_t chunks = (n_max + 1 + chunk - 1) / chunk;
    std::vector<MpfrVar> partial;
    partial.reserve(static_cast<std::size_t>(chunks));
    for (std::int64_t c = 0; c < chunks; ++c) partial.emplace_back(prec);

    const bool threaded = parallel && mpfr_buildopt_tls_p();
#pragma omp parallel for schedule(dynamic, 1) if (threaded)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t lo = c * chunk;
        const std::int64_t hi = std::min<std::int64_t>(n_max + 1, lo + chunk);
        sum_chunk(kind, cfg, prec, lo, hi, partial[static_cast<std::size_t>(c)].v);
    }

    MpfrVar total(prec);
    mpfr_set_zero(total.v, 1);
    for (auto& p : partial) mpfr_add(total.v, total.v, p.v, MPFR_RNDN);

    OracleReport report;
    report.value = to_decimal(total.v, opts.precision_digits);
    report.n_max_used = n_max;
    report.method = Method::BruteForceSum;
    report.precision_digits = opts.precision_digits;
    return report;
}

}  // namespace

OracleReport brute_force_sum(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max,
                             const BruteForceOptions& opts) {
    return brute_force_impl(kind, cfg, n_max, opts, true);
}

OracleReport brute_force_sum_serial(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max,
                                    const BruteForceOptions& opts) {
    return brute_force_impl(kind, cfg, n_max, opts, false);
}

namespace {

enum class KernelPart { Phase, Envelope, Full };

OracleReport kernel_part(KernelPart part, KernelKind kind, double z, double a, int digits) {
    detail::check_kernel_domain(z > 0, a >= 0);
    const mpfr_prec_t prec = digits_to_bits(digits);
    MpfrVar zz(prec), aa(prec), t(prec), e(prec), out(prec);
    mpfr_set_d(zz.v, z, MPFR_RNDN);
    mpfr_set_d(aa.v, a, MPFR_RNDN);
    if (a == 0.0) {
        mpfr_set(t.v, zz.v, MPFR_RNDN);
        mpfr_ui_div(e.v, 1, zz.v, MPFR_RNDN);
    } else {
        mpfr_mul(t.v, zz.v, aa.v, MPFR_RNDN);
        mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
        mpfr_hypot(e.v, t.v, MpfrVar::one(prec).v, MPFR_RNDN);
        mpfr_mul(e.v, e.v, zz.v, MPFR_RNDN);
        mpfr_ui_div(e.v, 1, e.v, MPFR_RNDN);
        mpfr_asinh(t.v, t.v, MPFR_RNDN);
        mpfr_mul_2ui(t.v, t.v, 1, MPFR_RNDN);
        mpfr_div(t.v, t.v, aa.v, MPFR_RNDN);
    }
    switch (part) {
        case KernelPart::Phase: mpfr_set(out.v, t.v, MPFR_RNDN); break;
        case KernelPart::Envelope: mpfr_set(out.v, e.v, MPFR_RNDN); break;
        case KernelPart::Full:
            if (kind == KernelKind::Cosine)
                mpfr_cos(out.v, t.v, MPFR_RNDN);
            else
                mpfr_sin(out.v, t.v, MPFR_RNDN);
            mpfr_mul(out.v, out.v, e.v, MPFR_RNDN);
            break;
    }
    OracleReport report;
    report.value = to_decimal(out.v, digits);
    report.method = Method::KernelDirect;
    report.precision_digits = digits;
    return report;
}

}  // namespace

OracleReport kernel_oracle(KernelKind kind, double z, double a, int precision_digits) {
    return kernel_part(KernelPart::Full, kind, z, a, precision_digits);
}

OracleReport phase_oracle(double z, double a, int precision_digits) {
    return kernel_part(KernelPart::Phase, KernelKind::Cosine, z, a, precision_digits);
}

OracleReport envelope_oracle(double z, double a, int precision_digits) {
    return kernel_part(KernelPart::Envelope, KernelKind::Cosine, z, a, precision_digits);
}

double OracleReport::approx() const { return std::strtod(value.c_str(), nullptr); }

const char* to_string(Method m) {
    switch (m) {
        case Method::BruteForceSum: return "BruteForceSum";
        case Method::EulerMaclaurin: return "EulerMaclaurin";
        case Method::AbelLimit: return "AbelLimit";
        case Method::KernelDirect: return "KernelDirect";
    }
    return "?";
}

}  // namespace resonance::oracle
