#pragma once

// Normal and anti-normal ordered forms of
//
//   U1 = exp(iy(R + L)),   U2 = exp(aL + bR + cS)
//
// U1 normal:      exp(iyf R) diag(g^{p_j}) exp(iyf L)
// U1 anti-normal: exp(iyf L) diag(g^{-p_j}) exp(iyf R)
// with f = tanh(y sqrt(sigma))/(y sqrt(sigma)), g = sech(y sqrt(sigma)), p_j = 2j - 1 + alpha + beta.
//
// U2 normal:      exp(b f+ R) diag(g+^{p_j}) exp(a f+ L)
// U2 anti-normal: exp(a f- L) diag(g-^{-p_j}) exp(b f- R)
// with q^2 = ab sigma - c^2 sigma^2, f+- = tau(q^2)/(1 -+ c sigma tau(q^2)),
// g+- = secq(q^2)/(1 -+ c sigma tau(q^2)).

#include <string_view>
#include <variant>
#include <vector>

#include "ladder/algebra.hpp"
#include "ladder/expm.hpp"
#include "ladder/types.hpp"

namespace ladder {

/// tan(sqrt x)/sqrt x, continued to tanh(sqrt -x)/sqrt -x for x < 0; tau(0) = 1.
/// Throws PoleError when sqrt x is within 1e-9 of pi/2 + k pi.
double tau(double x);
Complex tau(Complex z);

/// 1/cos(sqrt x), continued to 1/cosh(sqrt -x) for x < 0. Same poles as tau.
double secq(double x);
Complex secq(Complex z);

struct ScalarFactors {
    enum class Kind { U1, U2 };
    Kind kind = Kind::U1;
    // U1
    Complex f{1.0, 0.0};
    Complex g{1.0, 0.0};
    // U2
    Complex f_plus{1.0, 0.0};
    Complex f_minus{1.0, 0.0};
    Complex g_plus{1.0, 0.0};
    Complex g_minus{1.0, 0.0};
    Complex q_sq{0.0, 0.0};
};

/// Parametric specs use the formulas above (tan/sec continuation for sigma < 0).
/// Profile "sho" gives f = 1, g = exp(-y^2/2) applied as g^{S_jj};
/// "constant-one" gives f = g = 1. "phase" throws UnsupportedAlgebra.
ScalarFactors u1_factors(const AlgebraSpec& spec, double y);

/// Parametric specs only (UnsupportedAlgebra otherwise). Throws PoleError or
/// DivisionByZero when a denominator 1 -+ c sigma tau(q^2) vanishes.
ScalarFactors u2_factors(const AlgebraSpec& spec, Complex a, Complex b, Complex c);

enum class Ordering { Normal, AntiNormal };
std::string_view to_string(Ordering o);
Ordering parse_ordering(std::string_view name);

struct U1Exponent {
    double y = 0.0;
};
struct U2Exponent {
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};
};
using Exponent = std::variant<U1Exponent, U2Exponent>;

/// (iy, iy, 0) for U1, (a, b, c) for U2.
Coeffs to_coeffs(const Exponent& e);

/// Exponent of the diagonal factor at j: p_j for parametric specs, S_jj for
/// "sho", 0 for "constant-one".
double diagonal_exponent(const AlgebraSpec& spec, long j);

struct OrderedForm {
    Ordering ordering;
    /// Multiplies R (normal) or L (anti-normal) in the left factor.
    Complex left_exponent;
    /// Multiplies L (normal) or R (anti-normal) in the right factor.
    Complex right_exponent;
    IndexWindow window;
    /// Diagonal factor over the window, j_min first.
    std::vector<Complex> diagonal;
};

OrderedForm ordered_form(const AlgebraSpec& spec, const IndexWindow& window, const Exponent& e,
                         Ordering ordering);

/// Entries (rows x cols, by basis label) of the ordered product on the infinite
/// basis. Each band factor has one Taylor term per entry; the sum over the
/// intermediate index runs past the requested labels until it closes
/// (lambda = 0) or its terms are negligible. Evaluated in 50-digit arithmetic,
/// since the anti-normal sums cancel heavily.
/// Throws ConvergenceError if the intermediate sum diverges, NonUnitaryRegime
/// if it meets a negative lambda^2.
Matrix ordered_block(const AlgebraSpec& spec, const Exponent& e, Ordering ordering,
                     IndexRange rows, IndexRange cols);

/// ordered_block over the whole window.
Matrix ordered_product(const AlgebraSpec& spec, const IndexWindow& window, const Exponent& e,
                       Ordering ordering);

/// The three window matrices multiplied as they stand (double precision).
/// Agrees with ordered_product only where the window holds a closed block.
Matrix truncated_product(const AlgebraSpec& spec, const IndexWindow& window, const Exponent& e,
                         Ordering ordering);

Matrix u1_normal(const AlgebraSpec& spec, const IndexWindow& window, double y);
Matrix u1_antinormal(const AlgebraSpec& spec, const IndexWindow& window, double y);
Matrix u2_normal(const AlgebraSpec& spec, const IndexWindow& window, Complex a, Complex b,
                 Complex c);
Matrix u2_antinormal(const AlgebraSpec& spec, const IndexWindow& window, Complex a, Complex b,
                     Complex c);

/// exp(n) for strictly triangular n: the Taylor series stops at the first zero power.
Matrix nilpotent_expm(const Matrix& n);

/// Max deviation between the ordered product and expm(aL + bR + cS) on the core.
double factorization_residual(const AlgebraSpec& spec, const IndexWindow& window,
                              const Exponent& e, Ordering ordering);

} // namespace ladder
