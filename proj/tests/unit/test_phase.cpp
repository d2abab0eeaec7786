#include <doctest.h>

#include <cmath>

#include "ladder/phase.hpp"

using namespace ladder;

namespace {

double jn(long n, double x) {
    const double v = std::cyl_bessel_j(static_cast<double>(std::abs(n)), x);
    return (n < 0 && (-n) % 2) ? -v : v;
}

} // namespace

TEST_CASE("shift operators and their commutator") {
    const PhaseMatrices m = build_phase(6);
    CHECK(m.P(0, 1) == 1);
    CHECK(m.P(1, 0) == 0);
    CHECK(m.P_dagger(1, 0) == 1);
    CHECK((m.P_dagger - m.P.transpose()).cwiseAbs().maxCoeff() == 0);
    const Eigen::MatrixXi c = phase_commutator(m);
    CHECK(c(0, 0) == 1);
    CHECK(c(5, 5) == -1);
    CHECK(c.cwiseAbs().sum() == 2);
    CHECK(is_unit_impulse(c, 5));
    CHECK_FALSE(is_unit_impulse(c, 6));
    CHECK_THROWS_AS(build_phase(1), std::invalid_argument);
}

TEST_CASE("Bessel closed form against std::cyl_bessel_j and brute force") {
    for (long n = 0; n <= 10; ++n)
        for (long m = 0; m <= 10; ++m)
            for (double y : {0.3, 1.0}) {
                const double expect = jn(n - m, 2.0 * y) + ((m % 2) ? -1.0 : 1.0) * jn(n + m + 2, 2.0 * y);
                CHECK(phase_gnm(n, m, y) == doctest::Approx(expect).epsilon(1e-12).scale(1e-3));
                const Complex e = phase_element(n, m, y);
                CHECK(std::abs(e - phase_oracle(n, m, y, 60)) <= 1e-10);
            }
}

TEST_CASE("G_n = (n+1) J_{n+1}(2y) / y and its recursion") {
    for (long n = 0; n <= 6; ++n) {
        for (double y : {0.2, 0.5, 1.0}) {
            CHECK(phase_gn(n, y) == doctest::Approx((n + 1) * jn(n + 1, 2.0 * y) / y).epsilon(1e-13));
            CHECK(phase_recursion_residual(n, y) <= 1e-8);
        }
        CHECK(phase_gn(n, 0.0) == (n == 0 ? 1.0 : 0.0));
    }
}
