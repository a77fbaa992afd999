#pragma once

#include <cstdint>
#include <stdexcept>

#include "resonance/geometry.hpp"
#include "resonance/kernel.hpp"

namespace resonance {

// Distances from one atom to the images of the other, for reflection index n.
struct ImagePair {
    std::int64_t n = 0;
    double z_first = 0.0;
    double z_second = 0.0;
};

ImagePair image_pair(const ValidatedConfig& cfg, std::int64_t n);

template <class Real>
struct SumResultT {
    Real value{};
    std::int64_t n_max = 0;
    double tail_bound = 0.0;
    std::int64_t terms_evaluated = 0;
    bool converged = false;
};

using SumResult = SumResultT<double>;

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::int64_t n_reached, double bound_reached)
        : std::runtime_error(what), n_reached_(n_reached), bound_reached_(bound_reached) {}
    std::int64_t n_reached() const noexcept { return n_reached_; }
    double bound_reached() const noexcept { return bound_reached_; }

private:
    std::int64_t n_reached_;
    double bound_reached_;
};

struct SeriesOptions {
    double tol = 1e-10;
    std::int64_t max_terms = 100'000'000;
    // Return a non-converged result at the cap instead of throwing.
    bool throw_on_cap = true;
    // Number of summation-by-parts boundary terms used for the inertial (a = 0) tail.
    int abel_order = 4;
};

// Sum over n of kernel(z_first(n)) - kernel(z_second(n)), truncated once the certified
// error bound drops below opts.tol. For a > 0 the dropped tail is bounded directly; for
// a = 0 the tail beyond n_max is summed by parts and only the remainder is bounded.
template <class Real>
SumResultT<Real> bilateral_sum(KernelKind kind, const ValidatedConfig& cfg, const SeriesOptions& opts = {});

// Brackets with |n| <= n_max, accumulated in the same order as bilateral_sum.
template <class Real>
Real partial_sum(KernelKind kind, const ValidatedConfig& cfg, std::int64_t n_max);

// Upper bound on the magnitude of all brackets with |n| > n_max, and on any partial
// block of them. Decreases monotonically in n_max. May be +inf when no bound applies yet.
double tail_bound(const ValidatedConfig& cfg, KernelKind kind, std::int64_t n_max);

// Certified bound on the error of the inertial summation-by-parts tail of given order.
double abel_remainder_bound(const ValidatedConfig& cfg, std::int64_t n_max, int order);

}  // namespace resonance
