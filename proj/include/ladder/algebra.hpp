#pragma once

// Ladder algebras (R, L, S) defined by a lambda-profile, and their finite-window
// matrix representations.
//
//   L_{j,j+1} = lambda_j,  R_{j+1,j} = lambda_j,  S_jj = lambda_j^2 - lambda_{j-1}^2
//
// A parametric profile lambda_j^2 = sigma (alpha + j)(beta + j) closes the algebra
//
//   [L,R] = S,  [L,S] = 2 sigma L,  [S,R] = 2 sigma R.

#include <string>
#include <string_view>
#include <vector>

#include "ladder/types.hpp"

namespace ladder {

enum class Profile {
    Sho,          ///< lambda_j^2 = j + 1 for j >= -1, 0 below
    ConstantOne,  ///< lambda_j = 1 for every j
    Phase,        ///< lambda_j = 1 for j >= 0, 0 for j < 0
};

std::string_view to_string(Profile p);
/// Parses "sho", "constant-one" or "phase"; throws std::invalid_argument.
Profile parse_profile(std::string_view name);

class AlgebraSpec {
public:
    static AlgebraSpec parametric(double alpha, double beta, double sigma);
    static AlgebraSpec profile(Profile p);

    bool is_parametric() const { return parametric_; }
    /// Throw std::logic_error on a profile spec.
    double alpha() const;
    double beta() const;
    double sigma() const;
    /// Throws std::logic_error on a parametric spec.
    Profile profile_kind() const;

    /// lambda_j^2, evaluated in extended precision.
    long double lambda_sq_ext(long j) const;
    double lambda_sq(long j) const { return static_cast<double>(lambda_sq_ext(j)); }

    /// Human-readable form, e.g. "(alpha=1, beta=2, sigma=1)" or "profile sho".
    std::string describe() const;

private:
    AlgebraSpec() = default;
    bool parametric_ = true;
    double alpha_ = 0.0, beta_ = 0.0, sigma_ = 0.0;
    Profile profile_ = Profile::Sho;
};

inline double lambda_sq(const AlgebraSpec& spec, long j) { return spec.lambda_sq(j); }

/// Inclusive index range [lo, hi].
struct IndexRange {
    long lo = 0;
    long hi = 0;
    long size() const { return hi - lo + 1; }
    bool contains(long j) const { return lo <= j && j <= hi; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Truncation window [j_min, j_max] with an inner core on which results are trusted.
class IndexWindow {
public:
    /// Throws std::invalid_argument unless j_min <= core_lo <= core_hi <= j_max
    /// and the window holds at least two states.
    static IndexWindow make(long j_min, long j_max, long core_lo, long core_hi);
    /// Core inset by `inset` on both sides.
    static IndexWindow inset(long j_min, long j_max, long inset);
    /// Core equal to the whole window.
    static IndexWindow full(long j_min, long j_max);

    long j_min() const { return j_min_; }
    long j_max() const { return j_max_; }
    long core_lo() const { return core_lo_; }
    long core_hi() const { return core_hi_; }
    long size() const { return j_max_ - j_min_ + 1; }
    long core_size() const { return core_hi_ - core_lo_ + 1; }
    long index(long j) const { return j - j_min_; }
    bool contains(long j) const { return j_min_ <= j && j <= j_max_; }
    bool in_core(long j) const { return core_lo_ <= j && j <= core_hi_; }
    IndexRange range() const { return {j_min_, j_max_}; }
    IndexRange core() const { return {core_lo_, core_hi_}; }

    friend bool operator==(const IndexWindow&, const IndexWindow&) = default;

private:
    IndexWindow(long a, long b, long c, long d) : j_min_(a), j_max_(b), core_lo_(c), core_hi_(d) {}
    long j_min_, j_max_, core_lo_, core_hi_;
};

/// Finite-window representation of (L, R, S), indexed by basis label through window.index().
struct LadderMatrices {
    IndexWindow window;
    Matrix L;
    Matrix R;
    Matrix S;

    Complex L_at(long j, long k) const { return L(window.index(j), window.index(k)); }
    Complex R_at(long j, long k) const { return R(window.index(j), window.index(k)); }
    Complex S_at(long j, long k) const { return S(window.index(j), window.index(k)); }
};

/// Builds L, R, S with lambda_j = +sqrt(lambda_j^2).
/// Throws NonUnitaryRegime if lambda_j^2 < 0 for some j in [j_min - 1, j_max].
LadderMatrices build_matrices(const AlgebraSpec& spec, const IndexWindow& window);

/// Similarity-equivalent, non-Hermitian representation: L_{j,j+1} = 1,
/// R_{j+1,j} = lambda_j^2. Defined for any sign of lambda^2, so the closure
/// relations can be checked outside the unitary regime. Never used for exponentials.
LadderMatrices build_gauge_matrices(const AlgebraSpec& spec, const IndexWindow& window);

/// Max entrywise deviation of ([L,R]-S, [L,S]-2 sigma L, [S,R]-2 sigma R) over
/// core rows and columns. Products are accumulated in long double.
/// Requires a parametric spec (std::invalid_argument otherwise).
double commutator_residual(const LadderMatrices& m, const AlgebraSpec& spec);

/// Max entrywise deviation of [L,R] - S over the core; meaningful for any profile.
double lr_commutator_residual(const LadderMatrices& m);

/// Splits `window` at every j with lambda_j == 0 (the link j <-> j+1 is cut).
std::vector<IndexRange> detect_blocks(const AlgebraSpec& spec, IndexRange window);

/// True when lambda_{j-1} == 0, i.e. no state below j couples to j.
bool closed_below(const AlgebraSpec& spec, long j);
/// True when lambda_j == 0, i.e. no state above j couples to j.
bool closed_above(const AlgebraSpec& spec, long j);

/// Window [core_lo - pad, core_hi + pad], stopping early at closed edges.
/// Throws NonUnitaryRegime if a negative lambda^2 is met before the pad is used up.
IndexWindow padded_window(const AlgebraSpec& spec, IndexRange core, long pad);

} // namespace ladder
