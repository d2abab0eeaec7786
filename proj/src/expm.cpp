#include "ladder/expm.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ladder/errors.hpp"

namespace ladder {

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;
constexpr double kMaxNorm = 1e300;
constexpr int kMaxOrder = 40;

double inf_norm(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

void check_norm(double v, const char* where) {
    if (!std::isfinite(v) || v > kMaxNorm) {
        std::ostringstream os;
        os << "matrix norm " << v << " out of range in expm (" << where << ")";
        throw OverflowError(os.str());
    }
}

} // namespace

ExpmResult expm(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("expm needs a square matrix");
    if (!a.allFinite()) throw std::invalid_argument("expm input has non-finite entries");
    const long n = a.rows();
    const double norm = inf_norm(a);
    check_norm(norm, "input");
    if (norm == 0.0) return {Matrix::Identity(n, n), 0.0};

    int squarings = 0;
    double theta = norm;
    while (theta > 0.5) {
        theta /= 2;
        ++squarings;
    }
    const Matrix x = a / std::ldexp(1.0, squarings);

    // Taylor core with the geometric tail bound theta^(k+1)/(k+1)! / (1 - theta/(k+2)).
    Matrix sum = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    double term_bound = 1.0;  // theta^k / k!
    double tail = 0.0;
    int order = 0;
    for (int k = 1; k <= kMaxOrder; ++k) {
        term = (term * x) / static_cast<double>(k);
        sum += term;
        order = k;
        term_bound *= theta / k;
        if (max_abs(term) == 0.0) {
            tail = 0.0;
            break;
        }
        tail = term_bound * theta / (k + 1) / (1.0 - theta / (k + 2));
        if (tail < kUnit * 1e-3) break;
    }

    double p_norm = inf_norm(sum);
    // Each order of the term recurrence adds about n*u relative error.
    double delta = tail + static_cast<double>(order) * n * kUnit * std::exp(theta);

    for (int s = 0; s < squarings; ++s) {
        const Matrix next = sum * sum;
        delta = 2.0 * p_norm * delta + delta * delta + n * kUnit * p_norm * p_norm;
        sum = next;
        p_norm = inf_norm(sum);
        check_norm(p_norm, "squaring");
    }
    if (!std::isfinite(delta)) throw OverflowError("expm error bound overflowed");
    return {std::move(sum), delta};
}

namespace {

Matrix exponent_matrix(const LadderMatrices& m, const Coeffs& c) {
    return c.a * m.L + c.b * m.R + c.c * m.S;
}

void require_core(const IndexWindow& w, long n, long m) {
    if (!w.in_core(n) || !w.in_core(m)) {
        std::ostringstream os;
        os << "indices (" << n << ", " << m << ") outside core [" << w.core_lo() << ", "
           << w.core_hi() << "]";
        throw std::invalid_argument(os.str());
    }
}

} // namespace

Complex oracle_element(const AlgebraSpec& spec, const IndexWindow& window, const Coeffs& coeffs,
                       long n, long m) {
    require_core(window, n, m);
    const LadderMatrices mats = build_matrices(spec, window);
    const ExpmResult e = expm(exponent_matrix(mats, coeffs));
    return e.matrix(window.index(n), window.index(m));
}

ExpmResult oracle_block(const AlgebraSpec& spec, const IndexWindow& window, const Coeffs& coeffs) {
    const LadderMatrices mats = build_matrices(spec, window);
    ExpmResult e = expm(exponent_matrix(mats, coeffs));
    const long lo = window.index(window.core_lo());
    const long k = window.core_size();
    return {e.matrix.block(lo, lo, k, k), e.remainder_bound};
}

IndexWindow enlarge_open_sides(const AlgebraSpec& spec, const IndexWindow& window, long extra) {
    long lo = window.j_min();
    for (long i = 0; i < extra && !closed_below(spec, lo); ++i) --lo;
    long hi = window.j_max();
    for (long i = 0; i < extra && !closed_above(spec, hi); ++i) ++hi;
    return IndexWindow::make(lo, hi, window.core_lo(), window.core_hi());
}

double pad_sufficiency(const AlgebraSpec& spec, const IndexWindow& window, const Coeffs& coeffs,
                       long n, long m) {
    const IndexWindow big = enlarge_open_sides(spec, window);
    if (big == window) return 0.0;
    return std::abs(oracle_element(spec, window, coeffs, n, m) -
                    oracle_element(spec, big, coeffs, n, m));
}

double pad_certificate(const AlgebraSpec& spec, const IndexWindow& window, const Coeffs& coeffs) {
    const IndexWindow big = enlarge_open_sides(spec, window);
    if (big == window) return 0.0;
    return max_abs(oracle_block(spec, window, coeffs).matrix -
                   oracle_block(spec, big, coeffs).matrix);
}

long default_padding(const AlgebraSpec& spec, IndexRange core, double scale) {
    double lam = 0.0;
    for (long j = core.lo - 1; j <= core.hi; ++j) {
        const long double x = spec.lambda_sq_ext(j);
        if (x > 0) lam = std::max(lam, static_cast<double>(std::sqrt(x)));
    }
    const double rule = std::ceil(8.0 * std::abs(scale) * lam);
    return std::max<long>(16, static_cast<long>(rule));
}

} // namespace ladder
