#pragma once

// Power-series special functions: Bessel J_n and the Gauss series 2F1.

#include <vector>

namespace ladder {

struct SeriesValue {
    double value = 0.0;
    /// Bound on the dropped tail plus accumulated rounding.
    double err = 0.0;
};

/// J_n(x) = sum_j (-1)^j (x/2)^(2j+n) / (j! (j+n)!), with J_{-n} = (-1)^n J_n.
/// Summed in double for |x| <= 8 and in 50-digit arithmetic above.
/// Documented domain |x| <= 30 (std::domain_error outside).
SeriesValue bessel_jn_eval(long n, double x);
inline double bessel_jn(long n, double x) { return bessel_jn_eval(n, x).value; }

/// J_n(x) / x without the division, so the y -> 0 limit is exact.
SeriesValue bessel_jn_over_x(long n, double x);

struct HypergeomTerms {
    std::vector<double> partial_sums;
    std::vector<double> term_magnitudes;
    double value = 0.0;
    double err = 0.0;
    bool terminating = false;
};

/// 2F1(a, b; c; z) by its power series. Terminates exactly when a or b is a
/// non-positive integer; otherwise needs |z| < 0.95 (ConvergenceError).
/// c must not be a non-positive integer (std::domain_error).
HypergeomTerms hypergeometric_2f1(double a, double b, double c, double z);

} // namespace ladder
