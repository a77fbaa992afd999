#pragma once

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <string>

namespace resonance::oracle {

// Owning wrapper so MPFR registers can live in standard containers.
struct MpfrVar {
    explicit MpfrVar(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~MpfrVar() {
        if (v->_mpfr_d) mpfr_clear(v);
    }
    MpfrVar(MpfrVar&& other) noexcept {
        *v = *other.v;
        other.v->_mpfr_d = nullptr;
    }
    MpfrVar(const MpfrVar&) = delete;
    MpfrVar& operator=(const MpfrVar&) = delete;
    MpfrVar& operator=(MpfrVar&&) = delete;

    static MpfrVar one(mpfr_prec_t prec) {
        MpfrVar x(prec);
        mpfr_set_ui(x.v, 1, MPFR_RNDN);
        return x;
    }

    mpfr_t v;
};

inline mpfr_prec_t digits_to_bits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 10;
}

inline std::string to_decimal(const mpfr_t x, int digits) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

}  // namespace resonance::oracle

#include "resonance/geometry.hpp"
#include "resonance/kernel.hpp"

namespace resonance::oracle {

// Adds the brackets n = 0 (when m_lo == 0) and n = +-m for m in [m_lo, m_hi) into out.
void brute_force_range(KernelKind kind, const ValidatedConfig& cfg, mpfr_prec_t prec, std::int64_t m_lo,
                       std::int64_t m_hi, mpfr_t out);

}  // namespace resonance::oracle
