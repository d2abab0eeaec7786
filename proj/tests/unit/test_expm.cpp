#include <doctest.h>

#include <cmath>
#include <random>

#include "ladder/errors.hpp"
#include "ladder/expm.hpp"

using namespace ladder;

namespace {

Matrix rotation_generator(double t) {
    Matrix a(2, 2);
    a << 0.0, -t, t, 0.0;
    return a;
}

double factorial(long n) { return std::tgamma(static_cast<double>(n) + 1.0); }

} // namespace

TEST_CASE("2x2 rotations: error within the remainder bound") {
    for (double t : {0.1, 0.7, 3.0, 20.0, 150.0}) {
        const ExpmResult r = expm(rotation_generator(t));
        Matrix exact(2, 2);
        exact << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
        const double err = max_abs(r.matrix - exact);
        CAPTURE(t);
        CHECK(err <= r.remainder_bound);
        CHECK(r.remainder_bound <= 1e-10 * std::max(1.0, t));
    }
}

TEST_CASE("Pauli exponential") {
    Matrix sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    const double th = 1.3;
    const ExpmResult r = expm(kI * th * sx);
    const Matrix exact = std::cos(th) * Matrix::Identity(2, 2) + kI * std::sin(th) * sx;
    CHECK(max_abs(r.matrix - exact) <= std::max(r.remainder_bound, 1e-15));
}

TEST_CASE("diagonal and nilpotent inputs") {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = Complex(0.0, 2.0);
    d(2, 2) = -3.5;
    const Matrix e = expm(d).matrix;
    CHECK(std::abs(e(0, 0) - std::exp(1.0)) <= 1e-14);
    CHECK(std::abs(e(1, 1) - std::exp(Complex(0.0, 2.0))) <= 1e-14);
    CHECK(std::abs(e(2, 2) - std::exp(-3.5)) <= 1e-15);

    Matrix n = Matrix::Zero(4, 4);
    n(0, 1) = 2.0;
    n(1, 2) = 3.0;
    n(2, 3) = -1.0;
    // exp(N) = I + N + N^2/2 + N^3/6 exactly
    const Matrix exact = Matrix::Identity(4, 4) + n + n * n / 2.0 + n * n * n / 6.0;
    CHECK(max_abs(expm(n).matrix - exact) <= 1e-14);
}

TEST_CASE("input validation and overflow") {
    CHECK_THROWS_AS(expm(Matrix::Zero(2, 3)), std::invalid_argument);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(expm(bad), std::invalid_argument);
    Matrix huge = Matrix::Zero(2, 2);
    huge(0, 0) = 800.0;
    CHECK_THROWS_AS(expm(huge), OverflowError);
}

TEST_CASE("coherent state: SHO oracle element matches the Poisson amplitude") {
    const AlgebraSpec sho = AlgebraSpec::profile(Profile::Sho);
    const double y = 0.8;
    const IndexWindow w = padded_window(sho, {0, 8}, default_padding(sho, {0, 8}, y));
    const Coeffs c{Complex(0.0, y), Complex(0.0, y), 0.0};
    for (long n = 0; n <= 8; ++n) {
        // <n| exp(iy(a + a+)) |0> = e^{-y^2/2} (iy)^n / sqrt(n!)
        const Complex exact = std::exp(-y * y / 2.0) * std::pow(Complex(0.0, y), static_cast<double>(n)) /
                              std::sqrt(factorial(n));
        CHECK(std::abs(oracle_element(sho, w, c, n, 0) - exact) <= 1e-13);
    }
    CHECK(pad_sufficiency(sho, w, c, 8, 0) <= 1e-13);
    CHECK(pad_certificate(sho, w, c) <= 1e-13);
    CHECK_THROWS_AS(oracle_element(sho, w, c, 9, 0), std::invalid_argument);
}

TEST_CASE("oracle block is unitary for anti-Hermitian exponents") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const AlgebraSpec s = AlgebraSpec::parametric(1.0, 2.0, 1.0);
    for (int k = 0; k < 5; ++k) {
        const Complex a(u(rng), u(rng));
        const Coeffs c{a, -std::conj(a), Complex(0.0, u(rng))};
        const IndexWindow w = IndexWindow::full(0, 40);
        const LadderMatrices m = build_matrices(s, w);
        const Matrix gen = c.a * m.L + c.b * m.R + c.c * m.S;
        CHECK(max_abs(gen + gen.adjoint()) <= 1e-14);
        const Matrix u_full = expm(gen).matrix;
        CHECK(max_abs(u_full * u_full.adjoint() - Matrix::Identity(41, 41)) <= 1e-12);
    }
}

TEST_CASE("window helpers") {
    const AlgebraSpec one = AlgebraSpec::profile(Profile::ConstantOne);
    CHECK(default_padding(one, {0, 4}, 0.1) == 16);
    CHECK(default_padding(one, {0, 4}, 5.0) == 40);
    const IndexWindow w = IndexWindow::make(0, 10, 2, 8);
    const IndexWindow big = enlarge_open_sides(one, w);
    CHECK(big.range() == IndexRange{-8, 18});
    CHECK(big.core() == w.core());
    const IndexWindow closed = enlarge_open_sides(AlgebraSpec::profile(Profile::Phase), w);
    CHECK(closed.j_min() == 0);
    CHECK(closed.j_max() == 18);
}
