#pragma once

// G_n = (-i)^n <n| exp(iy(R + L)) |0> and G_nm = (-i)^(n-m) <n| exp(iy(R + L)) |m>.
//
// Closed form for a parametric algebra:
//   G_n = A_n (tanh(y sqrt s)/sqrt s)^n sech(y sqrt s)^(alpha+beta-1)
//         2F1(1-alpha, 1-beta; 1+n; -sinh^2(y sqrt s)),
//   A_n = (1/n!) lambda_0 lambda_1 ... lambda_{n-1}.
// Recursion: dG_{n+1}/dy = lambda_n G_n - lambda_{n+1} G_{n+2}.

#include <string_view>

#include "ladder/algebra.hpp"
#include "ladder/types.hpp"

namespace ladder {

enum class Route { ClosedForm, Series, Oracle, LimitSho, LimitBessel };
std::string_view to_string(Route r);

struct GnEvaluation {
    long n = 0;
    long m = 0;
    AlgebraSpec params = AlgebraSpec::profile(Profile::ConstantOne);
    double y = 0.0;
    Complex value{0.0, 0.0};
    Route route = Route::ClosedForm;
    double err_estimate = 0.0;
};

/// (1/n!) prod_{j=1..n} lambda_{j-1}; A_0 = 1. NonUnitaryRegime if a lambda^2 < 0.
double a_n(const AlgebraSpec& spec, long n);

/// Closed form above; sigma < 0 through tan/sec with -sinh^2 -> +sin^2.
/// Parametric specs only. ConvergenceError outside the 2F1 series domain or
/// when a negative sec base would need a branch choice.
GnEvaluation gn_closed(const AlgebraSpec& spec, long n, double y);

/// Partial sum of the anti-normal series
///   sum_{j>=n} (-1)^(n+j) (fy)^(2j-n) / ((j-n)! j!) prod_{i=n}^{j-1} lambda_i
///              prod_{i=0}^{j-1} lambda_i g^(-p_j)
/// with err_estimate = last term kept. Stops early once terms are negligible or
/// the chain closes. ConvergenceError if the final five terms do not decrease.
GnEvaluation gn_series(const AlgebraSpec& spec, long n, double y, long j_max_terms = 400);

/// (-i)^n times the brute-force element; err_estimate from pad_sufficiency and
/// the expm bound. pad < 0 selects the default padding rule.
GnEvaluation gn_oracle(const AlgebraSpec& spec, long n, double y, long pad = -1);

/// y^n / sqrt(n!) exp(-y^2/2).
GnEvaluation gn_sho_limit(long n, double y);

/// J_n(2y), the constant-one algebra.
GnEvaluation gn_bessel_limit(long n, double y);

/// Best available route: closed form (parametric, falling back to the oracle
/// outside its domain), limit-sho, limit-bessel, or the phase-operator closed form.
GnEvaluation gn_evaluate(const AlgebraSpec& spec, long n, double y);

/// |central difference of G_{n+1} at h = 1e-5 - (lambda_n G_n - lambda_{n+1} G_{n+2})|
/// using gn_evaluate.
double recursion_residual(const AlgebraSpec& spec, long n, double y);

/// Rescaled families whose triangles have integer links:
///   tilde(p):    sech^p y tanh^n y
///   bar(p):      Gamma(n+p)/(Gamma(p) n!) sech^p y tanh^n y
///   gauss-tilde: y^n/n! exp(-y^2/2)
///   gauss-bar:   y^n exp(-y^2/2)
enum class Variant { Tilde, Bar, GaussTilde, GaussBar };
std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

/// p is ignored by the gauss variants; tilde/bar need p > 0.
double tilde_bar_variants(double p, long n, double y, Variant which);

/// Residual of dF_{n+1} = w_right(n) F_n - w_left(n+1) F_{n+2} with the
/// variant's link weights (tilde: n+1, n+p; bar: n+p, n+1; gauss-tilde: 1, n+1;
/// gauss-bar: n+1, 1).
double variant_recursion_residual(Variant which, double p, long n, double y);

/// G_{n-m}(alpha+m, beta+m; sigma; y) for n >= m >= 0.
GnEvaluation gnm(const AlgebraSpec& spec, long n, long m, double y);

/// (-i)^(n-m) <n| U1 |m> by brute force (any n, m >= 0 in a buildable window).
GnEvaluation gnm_oracle(const AlgebraSpec& spec, long n, long m, double y, long pad = -1);

} // namespace ladder
