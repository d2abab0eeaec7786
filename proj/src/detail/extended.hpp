#pragma once

// 50-digit arithmetic for sums with heavy cancellation.

#include <complex>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace ladder::detail {

using ExtReal = boost::multiprecision::cpp_bin_float_50;
using ExtComplex = boost::multiprecision::cpp_complex_50;

inline ExtComplex to_ext(std::complex<double> z) { return ExtComplex(z.real(), z.imag()); }

inline std::complex<double> to_double(const ExtComplex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline const ExtReal& ext_pi() {
    static const ExtReal pi = boost::math::constants::pi<ExtReal>();
    return pi;
}

} // namespace ladder::detail
