#include "ladder/gn.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ladder/errors.hpp"
#include "ladder/expm.hpp"
#include "ladder/factorization.hpp"
#include "ladder/phase.hpp"
#include "ladder/special.hpp"

namespace ladder {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kStep = 1e-5;

double lambda_checked(const AlgebraSpec& spec, long j) {
    const long double x = spec.lambda_sq_ext(j);
    if (x < 0) {
        std::ostringstream os;
        os << "lambda_" << j << "^2 = " << static_cast<double>(x) << " < 0 for " << spec.describe();
        throw NonUnitaryRegime(os.str());
    }
    return static_cast<double>(std::sqrt(x));
}

void require_n(long n) {
    if (n < 0) throw std::invalid_argument("G_n needs n >= 0");
}

GnEvaluation make_eval(const AlgebraSpec& spec, long n, long m, double y, Complex v, Route r,
                       double err) {
    GnEvaluation e;
    e.n = n;
    e.m = m;
    e.params = spec;
    e.y = y;
    e.value = v;
    e.route = r;
    e.err_estimate = err;
    return e;
}

} // namespace

std::string_view to_string(Route r) {
    switch (r) {
    case Route::ClosedForm: return "closed-form";
    case Route::Series: return "series";
    case Route::Oracle: return "oracle";
    case Route::LimitSho: return "limit-sho";
    case Route::LimitBessel: return "limit-bessel";
    }
    return "?";
}

double a_n(const AlgebraSpec& spec, long n) {
    require_n(n);
    double a = 1.0;
    for (long j = 1; j <= n; ++j) a *= lambda_checked(spec, j - 1) / static_cast<double>(j);
    return a;
}

GnEvaluation gn_closed(const AlgebraSpec& spec, long n, double y) {
    require_n(n);
    if (!spec.is_parametric())
        throw std::invalid_argument("gn_closed needs a parametric spec; use gn_evaluate for profiles");
    const double alpha = spec.alpha(), beta = spec.beta(), sigma = spec.sigma();
    const double x = -sigma * y * y;
    const double t = y * tau(x);   // tanh(y sqrt s)/sqrt s, or tan for s < 0
    const double sc = secq(x);     // sech(y sqrt s), or sec
    const double z = -sigma * t * t / (sc * sc);  // -sinh^2, or +sin^2
    const double expo = alpha + beta - 1.0;
    if (sc < 0.0 && expo != std::floor(expo)) {
        std::ostringstream os;
        os << "sec base " << sc << " < 0 with non-integer power " << expo
           << " has no branch fixed by the closed form";
        throw ConvergenceError(os.str());
    }
    const HypergeomTerms f = hypergeometric_2f1(1.0 - alpha, 1.0 - beta, 1.0 + n, z);
    const double pre = a_n(spec, n) * std::pow(t, static_cast<double>(n)) * std::pow(sc, expo);
    const double v = pre * f.value;
    return make_eval(spec, n, 0, y, v, Route::ClosedForm,
                     std::abs(pre) * f.err + 8.0 * kEps * std::abs(v));
}

GnEvaluation gn_series(const AlgebraSpec& spec, long n, double y, long j_max_terms) {
    require_n(n);
    if (j_max_terms < 0) throw std::invalid_argument("j_max_terms must be >= 0");
    const ScalarFactors s = u1_factors(spec, y);
    const Complex fy = s.f * y;
    const Complex log_g = std::log(s.g);

    // j = n term: (fy)^n / n! * lambda_0 ... lambda_{n-1} * g^(-p_n)
    Complex term = std::exp(-diagonal_exponent(spec, n) * log_g);
    for (long i = 0; i < n; ++i) term *= fy * lambda_checked(spec, i) / static_cast<double>(i + 1);

    Complex sum = 0.0;
    std::vector<double> mags;
    double err = 0.0;
    for (long j = n;; ++j) {
        sum += term;
        mags.push_back(std::abs(term));
        err = std::abs(term);
        if (j - n >= j_max_terms) break;
        const long double l2 = spec.lambda_sq_ext(j);
        if (l2 == 0) {
            err = 0.0;
            break;
        }
        if (l2 < 0) lambda_checked(spec, j);
        const double dp = diagonal_exponent(spec, j + 1) - diagonal_exponent(spec, j);
        term *= -fy * fy * static_cast<double>(l2) / static_cast<double>((j + 1 - n) * (j + 1)) *
                std::exp(-dp * log_g);
        if (std::abs(term) <= 1e-3 * kEps * std::abs(sum) && j > n + 2) {
            err = std::abs(term);
            mags.push_back(err);
            break;
        }
    }
    if (mags.size() >= 6) {
        bool rising = true;
        for (size_t k = mags.size() - 5; k < mags.size(); ++k) rising = rising && mags[k] >= mags[k - 1];
        if (rising) {
            std::ostringstream os;
            os << "G_" << n << " series terms still growing after " << mags.size() << " terms";
            throw ConvergenceError(os.str());
        }
    }
    return make_eval(spec, n, 0, y, sum, Route::Series, err + 8.0 * kEps * std::abs(sum));
}

GnEvaluation gn_oracle(const AlgebraSpec& spec, long n, double y, long pad) {
    return gnm_oracle(spec, n, 0, y, pad);
}

GnEvaluation gnm_oracle(const AlgebraSpec& spec, long n, long m, double y, long pad) {
    require_n(n);
    require_n(m);
    const IndexRange core{std::min(n, m), std::max(n, m)};
    if (pad < 0) pad = default_padding(spec, core, y);
    const IndexWindow w = padded_window(spec, core, pad);
    const Complex iy(0.0, y);
    const Coeffs c{iy, iy, 0.0};
    const LadderMatrices mats = build_matrices(spec, w);
    const ExpmResult e = expm(c.a * mats.L + c.b * mats.R + c.c * mats.S);
    const Complex v = minus_i_pow(n - m) * e.matrix(w.index(n), w.index(m));
    const double cert = pad_sufficiency(spec, w, c, n, m);
    return make_eval(spec, n, m, y, v, Route::Oracle, cert + e.remainder_bound);
}

GnEvaluation gn_sho_limit(long n, double y) {
    require_n(n);
    double v = std::exp(-y * y / 2);
    for (long k = 1; k <= n; ++k) v *= y / std::sqrt(static_cast<double>(k));
    return make_eval(AlgebraSpec::profile(Profile::Sho), n, 0, y, v, Route::LimitSho,
                     4.0 * kEps * std::abs(v));
}

GnEvaluation gn_bessel_limit(long n, double y) {
    require_n(n);
    const SeriesValue j = bessel_jn_eval(n, 2 * y);
    return make_eval(AlgebraSpec::profile(Profile::ConstantOne), n, 0, y, j.value,
                     Route::LimitBessel, j.err);
}

GnEvaluation gn_evaluate(const AlgebraSpec& spec, long n, double y) {
    if (spec.is_parametric()) {
        try {
            return gn_closed(spec, n, y);
        } catch (const ConvergenceError&) {
            return gn_oracle(spec, n, y);
        }
    }
    switch (spec.profile_kind()) {
    case Profile::Sho: return gn_sho_limit(n, y);
    case Profile::ConstantOne: return gn_bessel_limit(n, y);
    case Profile::Phase: {
        const double v = phase_gn(n, y);
        return make_eval(spec, n, 0, y, v, Route::ClosedForm, 8.0 * kEps * std::abs(v));
    }
    }
    throw std::logic_error("unreachable profile");
}

double recursion_residual(const AlgebraSpec& spec, long n, double y) {
    require_n(n);
    auto g = [&](long k, double at) { return gn_evaluate(spec, k, at).value; };
    const Complex d = (g(n + 1, y + kStep) - g(n + 1, y - kStep)) / (2 * kStep);
    const Complex rhs = lambda_checked(spec, n) * g(n, y) - lambda_checked(spec, n + 1) * g(n + 2, y);
    return std::abs(d - rhs);
}

std::string_view to_string(Variant v) {
    switch (v) {
    case Variant::Tilde: return "tilde";
    case Variant::Bar: return "bar";
    case Variant::GaussTilde: return "gauss-tilde";
    case Variant::GaussBar: return "gauss-bar";
    }
    return "?";
}

Variant parse_variant(std::string_view name) {
    if (name == "tilde") return Variant::Tilde;
    if (name == "bar") return Variant::Bar;
    if (name == "gauss-tilde") return Variant::GaussTilde;
    if (name == "gauss-bar") return Variant::GaussBar;
    throw std::invalid_argument("unknown variant '" + std::string(name) +
                                "' (expected tilde, bar, gauss-tilde or gauss-bar)");
}

double tilde_bar_variants(double p, long n, double y, Variant which) {
    require_n(n);
    const bool needs_p = which == Variant::Tilde || which == Variant::Bar;
    if (needs_p && !(p > 0.0)) throw std::invalid_argument("tilde/bar variants need p > 0");
    switch (which) {
    case Variant::Tilde:
        return std::pow(1.0 / std::cosh(y), p) * std::pow(std::tanh(y), static_cast<double>(n));
    case Variant::Bar: {
        double coef = 1.0;  // Gamma(n+p) / (Gamma(p) n!)
        for (long k = 0; k < n; ++k) coef *= (p + static_cast<double>(k)) / static_cast<double>(k + 1);
        return coef * std::pow(1.0 / std::cosh(y), p) * std::pow(std::tanh(y), static_cast<double>(n));
    }
    case Variant::GaussTilde: {
        double v = std::exp(-y * y / 2);
        for (long k = 1; k <= n; ++k) v *= y / static_cast<double>(k);
        return v;
    }
    case Variant::GaussBar: return std::pow(y, static_cast<double>(n)) * std::exp(-y * y / 2);
    }
    throw std::logic_error("unreachable variant");
}

double variant_recursion_residual(Variant which, double p, long n, double y) {
    require_n(n);
    const double nn = static_cast<double>(n);
    double w_right = 0.0, w_left = 0.0;  // w_right(n), w_left(n+1)
    switch (which) {
    case Variant::Tilde: w_right = nn + 1; w_left = nn + 1 + p; break;
    case Variant::Bar: w_right = nn + p; w_left = nn + 2; break;
    case Variant::GaussTilde: w_right = 1; w_left = nn + 2; break;
    case Variant::GaussBar: w_right = nn + 1; w_left = 1; break;
    }
    auto f = [&](long k, double at) { return tilde_bar_variants(p, k, at, which); };
    const double d = (f(n + 1, y + kStep) - f(n + 1, y - kStep)) / (2 * kStep);
    return std::abs(d - (w_right * f(n, y) - w_left * f(n + 2, y)));
}

GnEvaluation gnm(const AlgebraSpec& spec, long n, long m, double y) {
    if (m < 0 || n < m) throw std::invalid_argument("gnm needs n >= m >= 0");
    if (!spec.is_parametric()) throw std::invalid_argument("gnm needs a parametric spec");
    const AlgebraSpec shifted = AlgebraSpec::parametric(spec.alpha() + static_cast<double>(m),
                                                        spec.beta() + static_cast<double>(m),
                                                        spec.sigma());
    GnEvaluation e = gn_closed(shifted, n - m, y);
    e.n = n;
    e.m = m;
    e.params = spec;
    return e;
}

} // namespace ladder
