#include "ladder/rotations.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ladder/algebra.hpp"
#include "ladder/errors.hpp"
#include "ladder/expm.hpp"
#include "ladder/factorization.hpp"

namespace ladder {

namespace {

constexpr double kSingularS = 1e-12;

Complex int_pow(Complex z, long k) {
    Complex r(1.0, 0.0);
    const bool inv = k < 0;
    for (long i = 0; i < std::abs(k); ++i) r *= z;
    return inv ? 1.0 / r : r;
}

void require_regular(const RotationSpec& r) {
    if (r.singular) {
        std::ostringstream os;
        os << "s = cos(omega) - i cos(theta) sin(omega) vanishes at omega = " << r.omega
           << ", theta = " << r.theta;
        throw SingularS(os.str());
    }
}

long two_m(const SpinMatrices& m, long index) {
    return static_cast<long>(std::lround(2.0 * m.m_of(index)));
}

} // namespace

RotationSpec make_rotation(double omega, double theta, double phi, double j) {
    const double twice = 2.0 * j;
    if (!(twice >= 0.0) || twice != std::floor(twice) || j > 25.0)
        throw std::invalid_argument("j must be a non-negative half-integer <= 25");
    RotationSpec r;
    r.omega = omega;
    r.theta = theta;
    r.phi = phi;
    r.j = j;
    const double st = std::sin(theta), ct = std::cos(theta);
    const Complex e_m = std::polar(1.0, -phi), e_p = std::polar(1.0, phi);
    r.a = kI * std::numbers::sqrt2 * omega * st * e_m;
    r.b = kI * std::numbers::sqrt2 * omega * st * e_p;
    r.c = -2.0 * kI * omega * ct;
    r.s = Complex(std::cos(omega), -ct * std::sin(omega));
    r.singular = std::abs(r.s) < kSingularS;
    r.h = r.singular ? Complex(std::numeric_limits<double>::quiet_NaN(), 0.0)
                     : std::numbers::sqrt2 * st * std::sin(omega) / r.s;
    return r;
}

SpinMatrices build_spin(double j) {
    const double twice = 2.0 * j;
    if (!(twice >= 0.0) || twice != std::floor(twice))
        throw std::invalid_argument("j must be a non-negative half-integer");
    SpinMatrices s;
    s.j = j;
    s.dim = static_cast<long>(twice) + 1;
    s.J_plus = Matrix::Zero(s.dim, s.dim);
    s.J_z = Matrix::Zero(s.dim, s.dim);
    for (long i = 0; i < s.dim; ++i) {
        const double m = s.m_of(i);
        s.J_z(i, i) = m;
        if (i + 1 < s.dim) s.J_plus(i + 1, i) = std::sqrt((j - m) * (j + m + 1) / 2.0);
    }
    s.J_minus = s.J_plus.adjoint();
    return s;
}

double spin_closure_residual(const SpinMatrices& m) {
    const Matrix& L = m.J_minus;
    const Matrix& R = m.J_plus;
    const Matrix S = -m.J_z;
    const double r1 = max_abs(L * R - R * L - S);
    const double r2 = max_abs(L * S - S * L + L);
    const double r3 = max_abs(S * R - R * S + R);
    return std::max({r1, r2, r3});
}

Matrix rotation_factorized(const RotationSpec& spec) {
    require_regular(spec);
    const SpinMatrices m = build_spin(spec.j);
    Vector d(m.dim);
    for (long i = 0; i < m.dim; ++i) d(i) = int_pow(spec.s, -two_m(m, i));
    const Matrix left = nilpotent_expm(kI * spec.h * std::polar(1.0, -spec.phi) * m.J_plus);
    const Matrix right = nilpotent_expm(kI * spec.h * std::polar(1.0, spec.phi) * m.J_minus);
    return left * d.asDiagonal() * right;
}

Matrix antinormal_rotation(const RotationSpec& spec) {
    require_regular(spec);
    const SpinMatrices m = build_spin(spec.j);
    const Complex hs = std::conj(spec.h), ss = std::conj(spec.s);
    Vector d(m.dim);
    for (long i = 0; i < m.dim; ++i) d(i) = int_pow(ss, two_m(m, i));
    const Matrix left = nilpotent_expm(kI * hs * std::polar(1.0, spec.phi) * m.J_minus);
    const Matrix right = nilpotent_expm(kI * hs * std::polar(1.0, -spec.phi) * m.J_plus);
    return left * d.asDiagonal() * right;
}

Matrix rotation_direct(const RotationSpec& spec) {
    const SpinMatrices m = build_spin(spec.j);
    const Matrix jx = (m.J_plus + m.J_minus) / std::numbers::sqrt2;
    const Matrix jy = (m.J_plus - m.J_minus) / (std::numbers::sqrt2 * kI);
    const double st = std::sin(spec.theta);
    const double wx = spec.omega * st * std::cos(spec.phi);
    const double wy = spec.omega * st * std::sin(spec.phi);
    const double wz = spec.omega * std::cos(spec.theta);
    return expm(2.0 * kI * (wx * jx + wy * jy + wz * m.J_z)).matrix;
}

Matrix rotation_via_u2(const RotationSpec& spec) {
    const SpinMatrices m = build_spin(spec.j);
    // Only sigma enters the scalar factors.
    const AlgebraSpec su2 = AlgebraSpec::parametric(spec.j + 1.0, -spec.j, -0.5);
    const Complex a = spec.b, b = spec.a, c = spec.c;
    const ScalarFactors f = u2_factors(su2, a, b, c);
    Vector d(m.dim);
    // g+^{S_mm / sigma} with S = -J_z, sigma = -1/2: exponent 2m
    for (long i = 0; i < m.dim; ++i) d(i) = int_pow(f.g_plus, two_m(m, i));
    const Matrix left = nilpotent_expm(b * f.f_plus * m.J_plus);
    const Matrix right = nilpotent_expm(a * f.f_plus * m.J_minus);
    return left * d.asDiagonal() * right;
}

} // namespace ladder
