#include <doctest.h>

#include <cmath>

#include "ladder/errors.hpp"
#include "ladder/gn.hpp"
#include "ladder/phase.hpp"

using namespace ladder;

namespace {

double factorial(long n) { return std::tgamma(static_cast<double>(n) + 1.0); }

} // namespace

TEST_CASE("A_n for lambda_j = j + 1 is one") {
    const AlgebraSpec s = AlgebraSpec::parametric(1.0, 1.0, 1.0);
    for (long n = 0; n <= 8; ++n) CHECK(a_n(s, n) == doctest::Approx(1.0));
    CHECK_THROWS_AS(a_n(AlgebraSpec::parametric(1.0, -2.0, 1.0), 2), NonUnitaryRegime);
}

TEST_CASE("(1,1,1): G_n = sech y tanh^n y") {
    const AlgebraSpec s = AlgebraSpec::parametric(1.0, 1.0, 1.0);
    for (long n = 0; n <= 5; ++n)
        for (double y : {0.1, 0.45, 0.9}) {
            const double exact = std::pow(std::tanh(y), static_cast<double>(n)) / std::cosh(y);
            CHECK(gn_closed(s, n, y).value.real() == doctest::Approx(exact).epsilon(1e-14));
        }
}

TEST_CASE("(1,p,1): G_n = sqrt(Gamma(n+p)/(n! Gamma(p))) sech^p y tanh^n y") {
    const double p = 0.5;
    const AlgebraSpec s = AlgebraSpec::parametric(1.0, p, 1.0);
    for (long n = 0; n <= 5; ++n) {
        const double y = 0.37;
        const double amp = std::sqrt(std::tgamma(n + p) / (factorial(n) * std::tgamma(p)));
        const double exact = amp * std::pow(1.0 / std::cosh(y), p) * std::pow(std::tanh(y), static_cast<double>(n));
        CHECK(gn_closed(s, n, y).value.real() == doctest::Approx(exact).epsilon(1e-13));
        CHECK(std::abs(gn_series(s, n, y).value.real() - exact) <= 1e-13);
    }
}

TEST_CASE("routes agree and alpha/beta symmetry") {
    const double params[][2] = {{1.0, 1.0}, {1.0, 2.0}, {1.0, 0.5}, {2.0, 3.0}};
    for (const auto& ab : params) {
        const AlgebraSpec s = AlgebraSpec::parametric(ab[0], ab[1], 1.0);
        const AlgebraSpec t = AlgebraSpec::parametric(ab[1], ab[0], 1.0);
        for (long n = 0; n <= 4; ++n)
            for (double y : {0.2, 0.5}) {
                const Complex c = gn_closed(s, n, y).value;
                CHECK(std::abs(c - gn_series(s, n, y).value) <= 1e-9);
                CHECK(std::abs(c - gn_oracle(s, n, y).value) <= 1e-9);
                CHECK(std::abs(c - gn_closed(t, n, y).value) <= 1e-13);
            }
    }
}

TEST_CASE("negative sigma: su(2) block against brute force") {
    // lambda^2 = -(4 + j)(j - 3)/2, closed at j = -4 and j = 3
    const AlgebraSpec s = AlgebraSpec::parametric(4.0, -3.0, -0.5);
    for (long n = 0; n <= 3; ++n) {
        const GnEvaluation o = gn_oracle(s, n, 0.6);
        const GnEvaluation e = gn_evaluate(s, n, 0.6);
        CHECK(std::abs(o.value - e.value) <= 1e-9);
    }
}

TEST_CASE("limits: coherent state and Bessel") {
    for (long n = 0; n <= 5; ++n) {
        const double y = 0.7;
        const double coherent = std::pow(y, static_cast<double>(n)) / std::sqrt(factorial(n)) * std::exp(-y * y / 2.0);
        CHECK(gn_sho_limit(n, y).value.real() == doctest::Approx(coherent).epsilon(1e-14));
        CHECK(std::abs(gn_oracle(AlgebraSpec::profile(Profile::Sho), n, y).value - coherent) <= 1e-12);
        const double bessel = std::cyl_bessel_j(static_cast<double>(n), 2.0 * y);
        CHECK(std::abs(gn_bessel_limit(n, y).value.real() - bessel) <= 1e-14);
        CHECK(std::abs(gn_oracle(AlgebraSpec::profile(Profile::ConstantOne), n, y).value - bessel) <= 1e-12);
        CHECK(std::abs(gn_evaluate(AlgebraSpec::profile(Profile::Phase), n, y).value.real() - phase_gn(n, y)) <= 1e-15);
    }
}

TEST_CASE("recursion residuals") {
    const AlgebraSpec specs[] = {AlgebraSpec::parametric(1.0, 1.0, 1.0), AlgebraSpec::parametric(2.0, 3.0, 1.0),
                                 AlgebraSpec::profile(Profile::Sho), AlgebraSpec::profile(Profile::ConstantOne),
                                 AlgebraSpec::profile(Profile::Phase)};
    for (const auto& s : specs)
        for (long n = 0; n <= 4; ++n)
            for (double y : {0.2, 0.5, 1.0}) CHECK(recursion_residual(s, n, y) <= 1e-8);
}

TEST_CASE("tilde and bar variants") {
    const double y = 0.4;
    const double sech = 1.0 / std::cosh(y), th = std::tanh(y);
    CHECK(tilde_bar_variants(2.0, 3, y, Variant::Tilde) == doctest::Approx(sech * sech * std::pow(th, 3.0)).epsilon(1e-14));
    // Gamma(3+2)/(Gamma(2) 3!) = 4
    CHECK(tilde_bar_variants(2.0, 3, y, Variant::Bar) == doctest::Approx(4.0 * sech * sech * std::pow(th, 3.0)).epsilon(1e-14));
    CHECK(tilde_bar_variants(0.0, 2, y, Variant::GaussTilde) == doctest::Approx(y * y / 2.0 * std::exp(-y * y / 2.0)));
    CHECK(tilde_bar_variants(0.0, 2, y, Variant::GaussBar) == doctest::Approx(y * y * std::exp(-y * y / 2.0)));
    for (Variant v : {Variant::Tilde, Variant::Bar, Variant::GaussTilde, Variant::GaussBar})
        for (double p : {0.5, 1.0, 2.0})
            for (long n = 0; n <= 5; ++n)
                for (double yy : {0.2, 0.5, 1.0}) CHECK(variant_recursion_residual(v, p, n, yy) <= 1e-8);
    CHECK_THROWS_AS(tilde_bar_variants(0.0, 1, y, Variant::Tilde), std::invalid_argument);
    CHECK(parse_variant("gauss-bar") == Variant::GaussBar);
}

TEST_CASE("G_nm by parameter shift") {
    const AlgebraSpec s = AlgebraSpec::parametric(1.0, 2.0, 1.0);
    for (long n = 0; n <= 5; ++n)
        for (long m = 0; m <= std::min(n, 3L); ++m) {
            const Complex shifted = gnm(s, n, m, 0.45).value;
            CHECK(std::abs(shifted - gnm_oracle(s, n, m, 0.45).value) <= 1e-9);
        }
    CHECK_THROWS_AS(gnm(s, 1, 2, 0.3), std::invalid_argument);
}

TEST_CASE("closed form outside the 2F1 domain falls back to the oracle") {
    // lambda^2 = (2.3 + j)(2.6 + j) is positive at every integer j: a two-sided chain
    const AlgebraSpec s = AlgebraSpec::parametric(2.3, 2.6, 1.0);
    CHECK(std::abs(gn_closed(s, 1, 0.6).value - gn_oracle(s, 1, 0.6).value) <= 1e-12);
    // sinh^2(1) > 0.95: non-terminating series out of range
    CHECK_THROWS_AS(gn_closed(s, 1, 1.0), ConvergenceError);
    const GnEvaluation e = gn_evaluate(s, 1, 1.0);
    CHECK(e.route == Route::Oracle);
    CHECK(e.value == gn_oracle(s, 1, 1.0).value);
}
