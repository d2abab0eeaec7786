#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ladder {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest |entry| of a complex matrix.
inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// (-i)^n for any integer n.
inline Complex minus_i_pow(long n) {
    switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
    }
}

/// i^n for any integer n.
inline Complex i_pow(long n) { return minus_i_pow(-n); }

} // namespace ladder
