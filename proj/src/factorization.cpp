#include "ladder/factorization.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "detail/extended.hpp"
#include "ladder/errors.hpp"

namespace ladder {

using detail::ExtComplex;
using detail::ExtReal;

namespace {

constexpr double kPoleTol = 1e-9;
constexpr double kDenTol = 1e-12;

void check_pole(Complex w) {
    const double half_pi = std::numbers::pi / 2;
    const double k = std::round((w.real() - half_pi) / std::numbers::pi);
    const double d = std::abs(w - Complex(half_pi + k * std::numbers::pi, 0.0));
    if (d < kPoleTol) {
        std::ostringstream os;
        os << "sqrt argument " << w << " is within " << d << " of the pole pi/2 + " << k << " pi";
        throw PoleError(os.str());
    }
}

ExtComplex tau_ext(const ExtComplex& z) {
    if (z == ExtComplex(0)) return ExtComplex(1);
    const ExtComplex w = sqrt(z);
    check_pole(detail::to_double(w));
    return tan(w) / w;
}

ExtComplex secq_ext(const ExtComplex& z) {
    if (z == ExtComplex(0)) return ExtComplex(1);
    const ExtComplex w = sqrt(z);
    check_pole(detail::to_double(w));
    return ExtComplex(1) / cos(w);
}

ExtReal lambda_sq_x(const AlgebraSpec& spec, long j) {
    if (spec.is_parametric())
        return ExtReal(spec.sigma()) * (ExtReal(spec.alpha()) + j) * (ExtReal(spec.beta()) + j);
    return ExtReal(spec.lambda_sq_ext(j));
}

ExtReal lambda_x(const AlgebraSpec& spec, long j) {
    const ExtReal x = lambda_sq_x(spec, j);
    if (x < 0) {
        std::ostringstream os;
        os << "lambda_" << j << "^2 < 0 for " << spec.describe();
        throw NonUnitaryRegime(os.str());
    }
    return sqrt(x);
}

ExtReal diag_exponent_x(const AlgebraSpec& spec, long j) {
    if (spec.is_parametric()) return ExtReal(2 * j - 1) + ExtReal(spec.alpha()) + ExtReal(spec.beta());
    switch (spec.profile_kind()) {
    case Profile::Sho: return lambda_sq_x(spec, j) - lambda_sq_x(spec, j - 1);
    case Profile::ConstantOne: return ExtReal(0);
    case Profile::Phase: break;
    }
    throw UnsupportedAlgebra("the phase algebra has no ordered form");
}

struct ExtU1 {
    ExtComplex f, g;
};

ExtU1 ext_u1(const AlgebraSpec& spec, double y) {
    if (spec.is_parametric()) {
        const ExtReal yy(y);
        const ExtComplex x(-ExtReal(spec.sigma()) * yy * yy, ExtReal(0));
        return {tau_ext(x), secq_ext(x)};
    }
    switch (spec.profile_kind()) {
    case Profile::Sho: {
        const ExtReal yy(y);
        return {ExtComplex(1), ExtComplex(exp(-yy * yy / 2))};
    }
    case Profile::ConstantOne: return {ExtComplex(1), ExtComplex(1)};
    case Profile::Phase: break;
    }
    throw UnsupportedAlgebra("normal ordering of exp(iy(P + P^dagger)) is not possible");
}

struct ExtU2 {
    ExtComplex f_plus, f_minus, g_plus, g_minus, q_sq;
};

ExtU2 ext_u2(const AlgebraSpec& spec, Complex a, Complex b, Complex c) {
    if (!spec.is_parametric())
        throw UnsupportedAlgebra("U2 factors need a parametric (alpha, beta, sigma) algebra");
    const ExtComplex ea = detail::to_ext(a), eb = detail::to_ext(b), ec = detail::to_ext(c);
    const ExtComplex sig(spec.sigma());
    const ExtComplex q_sq = ea * eb * sig - ec * ec * sig * sig;
    const ExtComplex t = tau_ext(q_sq);
    const ExtComplex sc = secq_ext(q_sq);
    const ExtComplex den_plus = ExtComplex(1) - ec * sig * t;
    const ExtComplex den_minus = ExtComplex(1) + ec * sig * t;
    if (abs(den_plus) < kDenTol || abs(den_minus) < kDenTol) {
        std::ostringstream os;
        os << "q -+ c sigma tan q vanishes for q^2 = " << detail::to_double(q_sq);
        throw DivisionByZero(os.str());
    }
    return {t / den_plus, t / den_minus, sc / den_plus, sc / den_minus, q_sq};
}

// Coefficients of one ordered product: left factor exp(x_left X), diagonal
// base^(sign e_j), right factor exp(x_right Y).
struct ProductParams {
    Ordering ordering;
    ExtComplex x_left, x_right;
    ExtComplex base;
    int sign;
};

ProductParams product_params(const AlgebraSpec& spec, const Exponent& e, Ordering o) {
    const bool normal = o == Ordering::Normal;
    if (const auto* u1 = std::get_if<U1Exponent>(&e)) {
        const ExtU1 fg = ext_u1(spec, u1->y);
        const ExtComplex x = ExtComplex(ExtReal(0), ExtReal(u1->y)) * fg.f;
        return {o, x, x, fg.g, normal ? 1 : -1};
    }
    const auto& u2 = std::get<U2Exponent>(e);
    const ExtU2 fg = ext_u2(spec, u2.a, u2.b, u2.c);
    const ExtComplex ea = detail::to_ext(u2.a), eb = detail::to_ext(u2.b);
    if (normal) return {o, eb * fg.f_plus, ea * fg.f_plus, fg.g_plus, 1};
    return {o, ea * fg.f_minus, eb * fg.f_minus, fg.g_minus, -1};
}

class ProductEngine {
public:
    ProductEngine(const AlgebraSpec& spec, const ProductParams& p) : spec_(spec), p_(p) {
        if (p_.base != ExtComplex(1)) log_base_ = log(p_.base);
        xx_ = p_.x_left * p_.x_right;
    }

    ExtComplex diag(long k) const {
        if (log_base_ == ExtComplex(0)) return ExtComplex(1);
        return exp(ExtComplex(p_.sign * diag_exponent_x(spec_, k)) * log_base_);
    }

    Complex entry(long n, long m) {
        return p_.ordering == Ordering::Normal ? normal_entry(n, m) : antinormal_entry(n, m);
    }

private:
    static constexpr long kMaxTerms = 20000;
    static constexpr double kPeakLimit = 1e32;

    // d_to / d_from; exponent differences are integers for every supported algebra.
    ExtComplex diag_ratio(long from, long to) {
        if (log_base_ == ExtComplex(0)) return ExtComplex(1);
        const ExtReal delta = diag_exponent_x(spec_, to) - diag_exponent_x(spec_, from);
        const long key = static_cast<long>(round(delta));
        if (ExtReal(key) != delta) return exp(ExtComplex(p_.sign * delta) * log_base_);
        auto it = ratio_cache_.find(key);
        if (it == ratio_cache_.end())
            it = ratio_cache_.emplace(key, exp(ExtComplex(p_.sign * key) * log_base_)).first;
        return it->second;
    }

    static double mag(const ExtComplex& z) {
        return static_cast<double>(std::max(abs(z.real()), abs(z.imag())));
    }

    // Shared tail loop. `next_lsq(k)` gives the lambda^2 linking k to the next
    // intermediate index, `den(k)` the factorial ratio, `step` is -1 or +1.
    template <class Den>
    Complex run(long n, long m, long k, ExtComplex t, int step, Den den) {
        ExtComplex sum = t;
        double peak = mag(t);
        double prev = peak;
        for (long iter = 0;; ++iter) {
            const long link = step < 0 ? k - 1 : k;
            const ExtReal l2 = lambda_sq_x(spec_, link);
            if (l2 == 0) break;
            if (l2 < 0) {
                std::ostringstream os;
                os << "ordered product for <" << n << "|.|" << m << "> needs lambda_" << link
                   << "^2 < 0 for " << spec_.describe();
                throw NonUnitaryRegime(os.str());
            }
            if (iter >= kMaxTerms) throw ConvergenceError("ordered product sum did not settle");
            t *= xx_ * diag_ratio(k, k + step) * (l2 / den(k));
            k += step;
            sum += t;
            const double cur = mag(t);
            peak = std::max(peak, cur);
            const double scale = std::max(mag(sum), 1.0);
            if (peak > kPeakLimit * scale) {
                std::ostringstream os;
                os << "ordered product sum diverges for <" << n << "|.|" << m << ">";
                throw ConvergenceError(os.str());
            }
            const double ratio = prev > 0 ? cur / prev : 0.0;
            prev = cur;
            if (cur == 0.0) break;
            if (ratio < 0.95 && cur * ratio / (1.0 - ratio) <= 1e-24 * std::max(mag(sum), 1e-280))
                break;
        }
        return detail::to_double(sum);
    }

    Complex normal_entry(long n, long m) {
        // sum over k <= min(n, m) of [exp(xR R)]_{nk} d_k [exp(xL L)]_{km}
        const long k0 = std::min(n, m);
        ExtComplex t(1);
        for (long r = 1; r <= n - k0; ++r) t *= p_.x_left * lambda_x(spec_, k0 + r - 1) / r;
        for (long r = 1; r <= m - k0; ++r) t *= p_.x_right * lambda_x(spec_, k0 + r - 1) / r;
        t *= diag(k0);
        return run(n, m, k0, t, -1,
                   [n, m](long k) { return ExtReal((n - k + 1) * (m - k + 1)); });
    }

    Complex antinormal_entry(long n, long m) {
        // sum over k >= max(n, m) of [exp(xL L)]_{nk} d_k [exp(xR R)]_{km}
        const long k0 = std::max(n, m);
        ExtComplex t(1);
        for (long r = 1; r <= k0 - n; ++r) t *= p_.x_left * lambda_x(spec_, n + r - 1) / r;
        for (long r = 1; r <= k0 - m; ++r) t *= p_.x_right * lambda_x(spec_, m + r - 1) / r;
        t *= diag(k0);
        return run(n, m, k0, t, +1,
                   [n, m](long k) { return ExtReal((k + 1 - n) * (k + 1 - m)); });
    }

    const AlgebraSpec& spec_;
    ProductParams p_;
    ExtComplex log_base_{0};
    ExtComplex xx_;
    std::map<long, ExtComplex> ratio_cache_;
};

} // namespace

double tau(double x) {
    if (x == 0.0) return 1.0;
    if (x < 0.0) {
        const double t = std::sqrt(-x);
        return std::tanh(t) / t;
    }
    const double w = std::sqrt(x);
    check_pole({w, 0.0});
    return std::tan(w) / w;
}

Complex tau(Complex z) { return detail::to_double(tau_ext(detail::to_ext(z))); }

double secq(double x) {
    if (x <= 0.0) return 1.0 / std::cosh(std::sqrt(-x));
    const double w = std::sqrt(x);
    check_pole({w, 0.0});
    return 1.0 / std::cos(w);
}

Complex secq(Complex z) { return detail::to_double(secq_ext(detail::to_ext(z))); }

ScalarFactors u1_factors(const AlgebraSpec& spec, double y) {
    const ExtU1 fg = ext_u1(spec, y);
    ScalarFactors s;
    s.kind = ScalarFactors::Kind::U1;
    s.f = detail::to_double(fg.f);
    s.g = detail::to_double(fg.g);
    return s;
}

ScalarFactors u2_factors(const AlgebraSpec& spec, Complex a, Complex b, Complex c) {
    const ExtU2 fg = ext_u2(spec, a, b, c);
    ScalarFactors s;
    s.kind = ScalarFactors::Kind::U2;
    s.f_plus = detail::to_double(fg.f_plus);
    s.f_minus = detail::to_double(fg.f_minus);
    s.g_plus = detail::to_double(fg.g_plus);
    s.g_minus = detail::to_double(fg.g_minus);
    s.q_sq = detail::to_double(fg.q_sq);
    return s;
}

std::string_view to_string(Ordering o) { return o == Ordering::Normal ? "normal" : "anti-normal"; }

Ordering parse_ordering(std::string_view name) {
    if (name == "normal") return Ordering::Normal;
    if (name == "anti-normal" || name == "antinormal") return Ordering::AntiNormal;
    throw std::invalid_argument("unknown ordering '" + std::string(name) +
                                "' (expected normal or anti-normal)");
}

Coeffs to_coeffs(const Exponent& e) {
    if (const auto* u1 = std::get_if<U1Exponent>(&e)) {
        const Complex iy(0.0, u1->y);
        return {iy, iy, 0.0};
    }
    const auto& u2 = std::get<U2Exponent>(e);
    return {u2.a, u2.b, u2.c};
}

double diagonal_exponent(const AlgebraSpec& spec, long j) {
    return static_cast<double>(diag_exponent_x(spec, j));
}

OrderedForm ordered_form(const AlgebraSpec& spec, const IndexWindow& window, const Exponent& e,
                         Ordering ordering) {
    const ProductParams p = product_params(spec, e, ordering);
    ProductEngine engine(spec, p);
    OrderedForm form{ordering, detail::to_double(p.x_left), detail::to_double(p.x_right), window,
                     {}};
    form.diagonal.reserve(static_cast<size_t>(window.size()));
    for (long j = window.j_min(); j <= window.j_max(); ++j)
        form.diagonal.push_back(detail::to_double(engine.diag(j)));
    return form;
}

Matrix ordered_block(const AlgebraSpec& spec, const Exponent& e, Ordering ordering,
                     IndexRange rows, IndexRange cols) {
    if (rows.hi < rows.lo || cols.hi < cols.lo) throw std::invalid_argument("empty block");
    ProductEngine engine(spec, product_params(spec, e, ordering));
    Matrix out(rows.size(), cols.size());
    for (long n = rows.lo; n <= rows.hi; ++n)
        for (long m = cols.lo; m <= cols.hi; ++m) out(n - rows.lo, m - cols.lo) = engine.entry(n, m);
    return out;
}

Matrix ordered_product(const AlgebraSpec& spec, const IndexWindow& window, const Exponent& e,
                       Ordering ordering) {
    build_matrices(spec, window);  // same preconditions as the oracle
    return ordered_block(spec, e, ordering, window.range(), window.range());
}

Matrix nilpotent_expm(const Matrix& n) {
    if (n.rows() != n.cols()) throw std::invalid_argument("nilpotent_expm needs a square matrix");
    const long dim = n.rows();
    Matrix result = Matrix::Identity(dim, dim);
    Matrix term = Matrix::Identity(dim, dim);
    for (long k = 1; k <= dim; ++k) {
        term = term * n / static_cast<double>(k);
        if (max_abs(term) == 0.0) break;
        result += term;
    }
    return result;
}

Matrix truncated_product(const AlgebraSpec& spec, const IndexWindow& window, const Exponent& e,
                         Ordering ordering) {
    const LadderMatrices mats = build_matrices(spec, window);
    const OrderedForm form = ordered_form(spec, window, e, ordering);
    const Vector d = Eigen::Map<const Vector>(form.diagonal.data(), window.size());
    const bool normal = ordering == Ordering::Normal;
    const Matrix left = nilpotent_expm(form.left_exponent * (normal ? mats.R : mats.L));
    const Matrix right = nilpotent_expm(form.right_exponent * (normal ? mats.L : mats.R));
    return left * d.asDiagonal() * right;
}

Matrix u1_normal(const AlgebraSpec& spec, const IndexWindow& window, double y) {
    return ordered_product(spec, window, U1Exponent{y}, Ordering::Normal);
}

Matrix u1_antinormal(const AlgebraSpec& spec, const IndexWindow& window, double y) {
    return ordered_product(spec, window, U1Exponent{y}, Ordering::AntiNormal);
}

Matrix u2_normal(const AlgebraSpec& spec, const IndexWindow& window, Complex a, Complex b,
                 Complex c) {
    return ordered_product(spec, window, U2Exponent{a, b, c}, Ordering::Normal);
}

Matrix u2_antinormal(const AlgebraSpec& spec, const IndexWindow& window, Complex a, Complex b,
                     Complex c) {
    return ordered_product(spec, window, U2Exponent{a, b, c}, Ordering::AntiNormal);
}

double factorization_residual(const AlgebraSpec& spec, const IndexWindow& window,
                              const Exponent& e, Ordering ordering) {
    const Matrix oracle = oracle_block(spec, window, to_coeffs(e)).matrix;
    const Matrix ordered = ordered_block(spec, e, ordering, window.core(), window.core());
    return max_abs(oracle - ordered);
}

} // namespace ladder
