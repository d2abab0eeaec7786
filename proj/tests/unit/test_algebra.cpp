#include <doctest.h>

#include <cmath>
#include <random>

#include "ladder/algebra.hpp"
#include "ladder/errors.hpp"

using namespace ladder;

TEST_CASE("lambda_sq follows sigma (alpha + j)(beta + j)") {
    const AlgebraSpec s = AlgebraSpec::parametric(1.5, -0.25, -2.0);
    for (long j = -5; j <= 5; ++j) CHECK(s.lambda_sq(j) == doctest::Approx(-2.0 * (1.5 + j) * (-0.25 + j)));
}

TEST_CASE("profile presets") {
    const AlgebraSpec sho = AlgebraSpec::profile(Profile::Sho);
    CHECK(sho.lambda_sq(-2) == 0.0);
    CHECK(sho.lambda_sq(-1) == 0.0);
    CHECK(sho.lambda_sq(4) == 5.0);
    const AlgebraSpec one = AlgebraSpec::profile(Profile::ConstantOne);
    CHECK(one.lambda_sq(-7) == 1.0);
    const AlgebraSpec ph = AlgebraSpec::profile(Profile::Phase);
    CHECK(ph.lambda_sq(-1) == 0.0);
    CHECK(ph.lambda_sq(0) == 1.0);
    CHECK(parse_profile("constant-one") == Profile::ConstantOne);
    CHECK_THROWS_AS(parse_profile("harmonic"), std::invalid_argument);
}

TEST_CASE("matrix entries sit on the expected bands") {
    const AlgebraSpec s = AlgebraSpec::parametric(2.0, 3.0, 0.5);
    const IndexWindow w = IndexWindow::full(0, 6);
    const LadderMatrices m = build_matrices(s, w);
    for (long j = 0; j < 6; ++j) {
        const double lam = std::sqrt(s.lambda_sq(j));
        CHECK(m.L_at(j, j + 1).real() == doctest::Approx(lam));
        CHECK(m.R_at(j + 1, j).real() == doctest::Approx(lam));
    }
    for (long j = 0; j <= 6; ++j)
        CHECK(m.S_at(j, j).real() == doctest::Approx(s.lambda_sq(j) - s.lambda_sq(j - 1)));
    CHECK(max_abs(m.L - m.R.adjoint()) == 0.0);
}

TEST_CASE("closure holds on random unitary windows") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ab(-10.0, 10.0);
    const double sigmas[] = {2.0, 1.0, 0.5, 0.25, -2.0, -1.0, -0.5, -0.25};
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const double sigma = sigmas[trial % 8];
        double alpha = ab(rng), beta = ab(rng);
        long lo = 0, hi = 0;
        if (sigma > 0) {
            // positive for j above both roots
            lo = static_cast<long>(std::ceil(std::max(-alpha, -beta))) + 1;
            hi = lo + 30;
        } else {
            // positive strictly between the roots
            if (alpha < beta) std::swap(alpha, beta);
            lo = static_cast<long>(std::ceil(-alpha)) + 1;
            hi = static_cast<long>(std::floor(-beta));
            if (hi - lo < 3) continue;
        }
        const IndexWindow w = IndexWindow::inset(lo, hi, 1);
        CHECK(commutator_residual(build_matrices(AlgebraSpec::parametric(alpha, beta, sigma), w),
                                  AlgebraSpec::parametric(alpha, beta, sigma)) <= 1e-12);
        ++checked;
    }
    CHECK(checked >= 25);
}

TEST_CASE("negative lambda^2 is rejected, the gauge form still closes") {
    const AlgebraSpec s = AlgebraSpec::parametric(1.0, -2.0, 1.0);
    const IndexWindow w = IndexWindow::inset(-4, 10, 1);
    CHECK_THROWS_AS(build_matrices(s, w), NonUnitaryRegime);
    CHECK(commutator_residual(build_gauge_matrices(s, w), s) <= 1e-12);
}

TEST_CASE("window validation") {
    CHECK_THROWS_AS(IndexWindow::make(0, 5, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(IndexWindow::make(0, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(IndexWindow::make(1, 5, 0, 2), std::invalid_argument);
    const IndexWindow w = IndexWindow::inset(-3, 9, 2);
    CHECK(w.core_lo() == -1);
    CHECK(w.core_hi() == 7);
}

TEST_CASE("blocks split where lambda vanishes") {
    const auto blocks = detect_blocks(AlgebraSpec::profile(Profile::Phase), {-3, 5});
    REQUIRE(blocks.size() == 4);
    CHECK(blocks[0] == IndexRange{-3, -3});
    CHECK(blocks[2] == IndexRange{-1, -1});
    CHECK(blocks[3] == IndexRange{0, 5});
    // lambda^2 = -(3 + j)(j - 2)/2 vanishes at j = -3 and j = 2
    const AlgebraSpec su2 = AlgebraSpec::parametric(3.0, -2.0, -0.5);
    CHECK(closed_below(su2, -2));
    CHECK(closed_above(su2, 2));
    const auto b2 = detect_blocks(su2, {-2, 2});
    REQUIRE(b2.size() == 1);
    CHECK(b2[0] == IndexRange{-2, 2});
}

TEST_CASE("phase profile: S is the unit impulse at the origin") {
    const LadderMatrices m = build_matrices(AlgebraSpec::profile(Profile::Phase), IndexWindow::make(0, 12, 0, 11));
    for (long j = 0; j <= 11; ++j) CHECK(m.S_at(j, j).real() == (j == 0 ? 1.0 : 0.0));
    CHECK(lr_commutator_residual(m) == 0.0);
    CHECK_THROWS_AS(commutator_residual(m, AlgebraSpec::profile(Profile::Phase)), std::invalid_argument);
}

TEST_CASE("padded windows stop at closed edges") {
    const IndexWindow w = padded_window(AlgebraSpec::profile(Profile::Sho), {0, 5}, 10);
    CHECK(w.j_min() == 0);
    CHECK(w.j_max() == 15);
    CHECK(w.core() == IndexRange{0, 5});
    const IndexWindow open = padded_window(AlgebraSpec::profile(Profile::ConstantOne), {-2, 2}, 4);
    CHECK(open.range() == IndexRange{-6, 6});
}
