#pragma once

// SU(2) rotations U = exp(2i W.J), W = omega (sin t cos p, sin t sin p, cos t),
// in the normalization sqrt2 J_+- = J_x +- i J_y, basis |j,m>, m = -j..j ascending.
//
// Normal form:      exp(i J_+ h e^{-ip}) diag(s^{-2m}) exp(i J_- h e^{ip})
// Anti-normal form: exp(i J_- h* e^{ip}) diag(s*^{2m}) exp(i J_+ h* e^{-ip})
// with s = cos w - i cos t sin w and h = sqrt2 sin t sin w / s.

#include "ladder/types.hpp"

namespace ladder {

struct RotationSpec {
    double omega = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double j = 0.5;
    // derived
    Complex a, b, c;  ///< i sqrt2 w sin t e^{-ip}, i sqrt2 w sin t e^{ip}, -2i w cos t
    Complex s;        ///< cos w - i cos t sin w
    Complex h;        ///< sqrt2 sin t sin w / s; NaN when s vanishes
    bool singular = false;  ///< |s| < 1e-12
};

/// Throws std::invalid_argument unless 2j is a non-negative integer (j <= 25).
RotationSpec make_rotation(double omega, double theta, double phi, double j);

struct SpinMatrices {
    double j = 0.5;
    long dim = 2;
    Matrix J_plus;   ///< (m+1, m) entry sqrt((j-m)(j+m+1)/2)
    Matrix J_minus;  ///< conjugate transpose of J_plus
    Matrix J_z;      ///< diag(m)
    double m_of(long index) const { return -j + static_cast<double>(index); }
};

SpinMatrices build_spin(double j);

/// Max entrywise deviation of [L,R] - S, [L,S] + L, [S,R] + R for
/// (L, R, S) = (J_-, J_+, -J_z), i.e. the ladder closure with sigma = -1/2.
double spin_closure_residual(const SpinMatrices& m);

/// Normal form. Throws SingularS when |s| < 1e-12.
Matrix rotation_factorized(const RotationSpec& spec);
/// expm(2i (W_x J_x + W_y J_y + W_z J_z)).
Matrix rotation_direct(const RotationSpec& spec);
/// Anti-normal form. Throws SingularS when |s| < 1e-12.
Matrix antinormal_rotation(const RotationSpec& spec);
/// U2 normal form with (L, R, S) = (J_-, J_+, -J_z), sigma = -1/2 and the
/// coefficients (a, b, c) = (b_rot, a_rot, c_rot): exp(a L + b R + c S) = exp(2i W.J).
Matrix rotation_via_u2(const RotationSpec& spec);

} // namespace ladder
