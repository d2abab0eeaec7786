#include "ladder/phase.hpp"

#include <stdexcept>

#include "ladder/algebra.hpp"
#include "ladder/expm.hpp"
#include "ladder/special.hpp"

namespace ladder {

namespace {

void require_nonnegative(long n, long m) {
    if (n < 0 || m < 0) throw std::invalid_argument("phase-operator labels must be >= 0");
}

} // namespace

PhaseMatrices build_phase(long size) {
    if (size < 2) throw std::invalid_argument("phase window needs at least two states");
    PhaseMatrices m{size, Eigen::MatrixXi::Zero(size, size), Eigen::MatrixXi::Zero(size, size)};
    for (long n = 1; n < size; ++n) {
        m.P(n - 1, n) = 1;
        m.P_dagger(n, n - 1) = 1;
    }
    return m;
}

Eigen::MatrixXi phase_commutator(const PhaseMatrices& m) {
    return m.P * m.P_dagger - m.P_dagger * m.P;
}

bool is_unit_impulse(const Eigen::MatrixXi& c, long core) {
    if (core < 1 || core > c.rows() || core > c.cols()) return false;
    for (long r = 0; r < core; ++r)
        for (long k = 0; k < core; ++k)
            if (c(r, k) != (r == 0 && k == 0 ? 1 : 0)) return false;
    return true;
}

double phase_gnm(long n, long m, double y) {
    require_nonnegative(n, m);
    const double sign = m % 2 == 0 ? 1.0 : -1.0;
    return bessel_jn(n - m, 2 * y) + sign * bessel_jn(n + m + 2, 2 * y);
}

Complex phase_element(long n, long m, double y) {
    return i_pow(n - m) * phase_gnm(n, m, y);
}

double phase_gn(long n, double y) {
    if (n < 0) throw std::invalid_argument("phase_gn needs n >= 0");
    // (n+1) J_{n+1}(2y)/y = 2 (n+1) J_{n+1}(x)/x with x = 2y
    return 2.0 * static_cast<double>(n + 1) * bessel_jn_over_x(n + 1, 2 * y).value;
}

double phase_recursion_residual(long n, double y) {
    constexpr double h = 1e-5;
    const double d = (phase_gn(n + 1, y + h) - phase_gn(n + 1, y - h)) / (2 * h);
    return std::abs(d - (phase_gn(n, y) - phase_gn(n + 2, y)));
}

Complex phase_oracle(long n, long m, double y, long size) {
    require_nonnegative(n, m);
    if (std::max(n, m) >= size) throw std::invalid_argument("phase_oracle: label outside window");
    const AlgebraSpec spec = AlgebraSpec::profile(Profile::Phase);
    const IndexWindow w = IndexWindow::make(0, size - 1, 0, std::max(n, m));
    const Complex iy(0.0, y);
    return oracle_element(spec, w, Coeffs{iy, iy, 0.0}, n, m);
}

} // namespace ladder
