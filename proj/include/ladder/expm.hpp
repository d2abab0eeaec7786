#pragma once

// Brute-force matrix exponential: the reference every ordered form is checked against.

#include "ladder/algebra.hpp"
#include "ladder/types.hpp"

namespace ladder {

struct ExpmResult {
    Matrix matrix;
    /// Bound on |exp(a) - matrix| in the infinity norm (hence also entrywise):
    /// Taylor tail of the scaled matrix plus a first-order rounding allowance,
    /// both carried through the squarings.
    double remainder_bound = 0.0;
};

/// Scaling and squaring with a truncated Taylor core.
/// Throws std::invalid_argument for non-square or non-finite input and
/// OverflowError when an intermediate norm leaves the floating range.
ExpmResult expm(const Matrix& a);

/// Coefficients of the exponent a L + b R + c S.
struct Coeffs {
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};
};

/// <n| exp(aL + bR + cS) |m> on `window`. n and m must lie in the core.
Complex oracle_element(const AlgebraSpec& spec, const IndexWindow& window, const Coeffs& coeffs,
                       long n, long m);

/// The core block of exp(aL + bR + cS) on `window`, rows and columns by basis label.
ExpmResult oracle_block(const AlgebraSpec& spec, const IndexWindow& window, const Coeffs& coeffs);

/// `window` grown by `extra` states on every side that is not closed (lambda = 0 there).
IndexWindow enlarge_open_sides(const AlgebraSpec& spec, const IndexWindow& window, long extra = 8);

/// |oracle_element(window) - oracle_element(enlarged window)|.
double pad_sufficiency(const AlgebraSpec& spec, const IndexWindow& window, const Coeffs& coeffs,
                       long n, long m);

/// Same check taken over the whole core block.
double pad_certificate(const AlgebraSpec& spec, const IndexWindow& window, const Coeffs& coeffs);

/// max(16, ceil(8 * scale * max lambda over the core)), where scale is |y| for
/// U1 or max(|a|, |b|) for a general exponent.
long default_padding(const AlgebraSpec& spec, IndexRange core, double scale);

} // namespace ladder
