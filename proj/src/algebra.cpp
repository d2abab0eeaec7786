#include "ladder/algebra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ladder/errors.hpp"

namespace ladder {

std::string_view to_string(Profile p) {
    switch (p) {
    case Profile::Sho: return "sho";
    case Profile::ConstantOne: return "constant-one";
    case Profile::Phase: return "phase";
    }
    return "?";
}

Profile parse_profile(std::string_view name) {
    if (name == "sho") return Profile::Sho;
    if (name == "constant-one") return Profile::ConstantOne;
    if (name == "phase") return Profile::Phase;
    throw std::invalid_argument("unknown profile '" + std::string(name) +
                                "' (expected sho, constant-one or phase)");
}

AlgebraSpec AlgebraSpec::parametric(double alpha, double beta, double sigma) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(sigma))
        throw std::invalid_argument("alpha, beta, sigma must be finite");
    AlgebraSpec s;
    s.parametric_ = true;
    s.alpha_ = alpha;
    s.beta_ = beta;
    s.sigma_ = sigma;
    return s;
}

AlgebraSpec AlgebraSpec::profile(Profile p) {
    AlgebraSpec s;
    s.parametric_ = false;
    s.profile_ = p;
    return s;
}

double AlgebraSpec::alpha() const {
    if (!parametric_) throw std::logic_error("alpha() on a profile spec");
    return alpha_;
}
double AlgebraSpec::beta() const {
    if (!parametric_) throw std::logic_error("beta() on a profile spec");
    return beta_;
}
double AlgebraSpec::sigma() const {
    if (!parametric_) throw std::logic_error("sigma() on a profile spec");
    return sigma_;
}
Profile AlgebraSpec::profile_kind() const {
    if (parametric_) throw std::logic_error("profile_kind() on a parametric spec");
    return profile_;
}

long double AlgebraSpec::lambda_sq_ext(long j) const {
    if (parametric_) {
        const long double jj = static_cast<long double>(j);
        return static_cast<long double>(sigma_) * (static_cast<long double>(alpha_) + jj) *
               (static_cast<long double>(beta_) + jj);
    }
    switch (profile_) {
    case Profile::Sho: return j >= -1 ? static_cast<long double>(j + 1) : 0.0L;
    case Profile::ConstantOne: return 1.0L;
    case Profile::Phase: return j >= 0 ? 1.0L : 0.0L;
    }
    return 0.0L;
}

std::string AlgebraSpec::describe() const {
    std::ostringstream os;
    if (parametric_)
        os << "(alpha=" << alpha_ << ", beta=" << beta_ << ", sigma=" << sigma_ << ")";
    else
        os << "profile " << to_string(profile_);
    return os.str();
}

IndexWindow IndexWindow::make(long j_min, long j_max, long core_lo, long core_hi) {
    if (!(j_min <= core_lo && core_lo <= core_hi && core_hi <= j_max))
        throw std::invalid_argument("window requires j_min <= core_lo <= core_hi <= j_max");
    if (j_max - j_min + 1 < 2) throw std::invalid_argument("window must hold at least two states");
    return IndexWindow(j_min, j_max, core_lo, core_hi);
}

IndexWindow IndexWindow::inset(long j_min, long j_max, long inset) {
    return make(j_min, j_max, j_min + inset, j_max - inset);
}

IndexWindow IndexWindow::full(long j_min, long j_max) { return make(j_min, j_max, j_min, j_max); }

namespace {

void require_nonnegative(const AlgebraSpec& spec, long lo, long hi) {
    for (long j = lo; j <= hi; ++j) {
        if (spec.lambda_sq_ext(j) < 0.0L) {
            std::ostringstream os;
            os << "lambda_" << j << "^2 = " << spec.lambda_sq(j) << " < 0 for " << spec.describe();
            throw NonUnitaryRegime(os.str());
        }
    }
}

} // namespace

LadderMatrices build_matrices(const AlgebraSpec& spec, const IndexWindow& window) {
    require_nonnegative(spec, window.j_min() - 1, window.j_max());
    const long n = window.size();
    LadderMatrices m{window, Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n)};
    for (long j = window.j_min(); j <= window.j_max(); ++j) {
        const long i = window.index(j);
        const long double x = spec.lambda_sq_ext(j);
        if (j < window.j_max()) {
            const double lam = static_cast<double>(std::sqrt(x));
            m.L(i, i + 1) = lam;
            m.R(i + 1, i) = lam;
        }
        m.S(i, i) = static_cast<double>(x - spec.lambda_sq_ext(j - 1));
    }
    return m;
}

LadderMatrices build_gauge_matrices(const AlgebraSpec& spec, const IndexWindow& window) {
    const long n = window.size();
    LadderMatrices m{window, Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n)};
    for (long j = window.j_min(); j <= window.j_max(); ++j) {
        const long i = window.index(j);
        const long double x = spec.lambda_sq_ext(j);
        if (j < window.j_max()) {
            m.L(i, i + 1) = 1.0;
            m.R(i + 1, i) = static_cast<double>(x);
        }
        m.S(i, i) = static_cast<double>(x - spec.lambda_sq_ext(j - 1));
    }
    return m;
}

namespace {

using ComplexLd = std::complex<long double>;
using MatrixLd = Eigen::Matrix<ComplexLd, Eigen::Dynamic, Eigen::Dynamic>;

long double core_max_abs(const MatrixLd& d, const IndexWindow& w) {
    const long lo = w.index(w.core_lo());
    const long n = w.core_size();
    long double worst = 0.0L;
    for (long r = lo; r < lo + n; ++r)
        for (long c = lo; c < lo + n; ++c) worst = std::max(worst, std::abs(d(r, c)));
    return worst;
}

} // namespace

double commutator_residual(const LadderMatrices& m, const AlgebraSpec& spec) {
    if (!spec.is_parametric())
        throw std::invalid_argument("commutator_residual needs a parametric spec");
    const MatrixLd L = m.L.cast<ComplexLd>();
    const MatrixLd R = m.R.cast<ComplexLd>();
    const MatrixLd S = m.S.cast<ComplexLd>();
    const long double two_sigma = 2.0L * static_cast<long double>(spec.sigma());

    const MatrixLd d1 = L * R - R * L - S;
    const MatrixLd d2 = L * S - S * L - two_sigma * L;
    const MatrixLd d3 = S * R - R * S - two_sigma * R;
    const long double worst = std::max({core_max_abs(d1, m.window), core_max_abs(d2, m.window),
                                        core_max_abs(d3, m.window)});
    return static_cast<double>(worst);
}

double lr_commutator_residual(const LadderMatrices& m) {
    const MatrixLd L = m.L.cast<ComplexLd>();
    const MatrixLd R = m.R.cast<ComplexLd>();
    const MatrixLd S = m.S.cast<ComplexLd>();
    return static_cast<double>(core_max_abs(L * R - R * L - S, m.window));
}

std::vector<IndexRange> detect_blocks(const AlgebraSpec& spec, IndexRange window) {
    if (window.hi < window.lo) throw std::invalid_argument("empty window");
    std::vector<IndexRange> blocks;
    long start = window.lo;
    for (long j = window.lo; j < window.hi; ++j) {
        if (spec.lambda_sq_ext(j) == 0.0L) {
            blocks.push_back({start, j});
            start = j + 1;
        }
    }
    blocks.push_back({start, window.hi});
    return blocks;
}

bool closed_below(const AlgebraSpec& spec, long j) { return spec.lambda_sq_ext(j - 1) == 0.0L; }
bool closed_above(const AlgebraSpec& spec, long j) { return spec.lambda_sq_ext(j) == 0.0L; }

IndexWindow padded_window(const AlgebraSpec& spec, IndexRange core, long pad) {
    if (core.hi < core.lo) throw std::invalid_argument("empty core");
    if (pad < 0) throw std::invalid_argument("negative padding");
    long lo = core.lo;
    while (lo > core.lo - pad && !closed_below(spec, lo)) --lo;
    long hi = core.hi;
    while (hi < core.hi + pad && !closed_above(spec, hi)) ++hi;
    if (hi == lo) {
        // A single decoupled state; widen to satisfy the two-state minimum.
        if (!closed_above(spec, hi)) ++hi;
        else --lo;
    }
    require_nonnegative(spec, lo - 1, hi);
    return IndexWindow::make(lo, hi, core.lo, core.hi);
}

} // namespace ladder
