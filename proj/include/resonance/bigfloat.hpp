#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace resonance {

// Fixed 50-digit binary float used where double cannot resolve the quantity being compared.
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50>,
                                               boost::multiprecision::et_off>;

}  // namespace resonance
