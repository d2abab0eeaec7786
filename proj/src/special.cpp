#include "ladder/special.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "detail/extended.hpp"
#include "ladder/errors.hpp"

namespace ladder {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Neumaier-compensated running sum.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// sum_j (-1)^j h^(2j + n + shift) / (j! (j+n)!) with h = x/2 and n + shift >= 0.
// shift = 0 gives J_n(x); shift = -1 gives J_n(x)/h.
SeriesValue bessel_sum_double(long n, double h, int shift) {
    double term = 1.0;
    for (long k = 1; k <= n; ++k) term /= k;
    for (long k = 0; k < n + shift; ++k) term *= h;
    KahanSum s;
    double peak = std::abs(term);
    const double h2 = h * h;
    for (long j = 0;; ++j) {
        s.add(term);
        const double next = -term * h2 / static_cast<double>((j + 1) * (j + 1 + n));
        peak = std::max(peak, std::abs(next));
        if (next == 0.0) return {s.value(), 4.0 * kEps * peak};
        if (j + 1 > std::abs(h) && std::abs(next) <= kEps * 1e-2 * std::abs(s.value()))
            return {s.value(), std::abs(next) + 4.0 * kEps * peak};
        term = next;
    }
}

SeriesValue bessel_sum_ext(long n, double hd, int shift) {
    using detail::ExtReal;
    const ExtReal h(hd);
    ExtReal term(1);
    for (long k = 1; k <= n; ++k) term /= k;
    for (long k = 0; k < n + shift; ++k) term *= h;
    ExtReal sum(0);
    const ExtReal h2 = h * h;
    const ExtReal tiny(1e-40);
    for (long j = 0;; ++j) {
        sum += term;
        const ExtReal next = -term * h2 / ((j + 1) * (j + 1 + n));
        if (next == 0) return {static_cast<double>(sum), 0.0};
        if (j + 1 > std::abs(hd) && abs(next) <= tiny * abs(sum)) {
            const double v = static_cast<double>(sum);
            return {v, static_cast<double>(abs(next)) + kEps * std::abs(v)};
        }
        term = next;
    }
}

SeriesValue bessel_series(long n, double x, int shift) {
    if (!std::isfinite(x) || std::abs(x) > 30.0) {
        std::ostringstream os;
        os << "bessel_jn: |x| = " << std::abs(x) << " outside the supported domain |x| <= 30";
        throw std::domain_error(os.str());
    }
    if (std::abs(x) <= 8.0) return bessel_sum_double(n, x / 2, shift);
    return bessel_sum_ext(n, x / 2, shift);
}

} // namespace

SeriesValue bessel_jn_eval(long n, double x) {
    if (n < 0) {
        SeriesValue v = bessel_jn_eval(-n, x);
        if ((-n) % 2 != 0) v.value = -v.value;
        return v;
    }
    return bessel_series(n, x, 0);
}

SeriesValue bessel_jn_over_x(long n, double x) {
    if (n < 0) {
        SeriesValue v = bessel_jn_over_x(-n, x);
        if ((-n) % 2 != 0) v.value = -v.value;
        return v;
    }
    if (n == 0) throw std::domain_error("J_0(x)/x is singular at x = 0");
    // J_n(x)/x = (1/2) J_n(x)/h
    SeriesValue v = bessel_series(n, x, -1);
    v.value /= 2;
    v.err /= 2;
    return v;
}

HypergeomTerms hypergeometric_2f1(double a, double b, double c, double z) {
    if (is_nonpositive_integer(c)) throw std::domain_error("2F1 with c a non-positive integer");
    HypergeomTerms out;
    out.terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (!out.terminating && !(std::abs(z) < 0.95)) {
        std::ostringstream os;
        os << "2F1 series outside its admissible region: |z| = " << std::abs(z) << " >= 0.95";
        throw ConvergenceError(os.str());
    }
    long k_stop = std::numeric_limits<long>::max();
    if (is_nonpositive_integer(a)) k_stop = static_cast<long>(-a);
    if (is_nonpositive_integer(b)) k_stop = std::min(k_stop, static_cast<long>(-b));

    KahanSum s;
    double term = 1.0;
    double peak = 1.0;
    for (long k = 0;; ++k) {
        s.add(term);
        out.partial_sums.push_back(s.value());
        out.term_magnitudes.push_back(std::abs(term));
        if (k == k_stop) {
            out.value = s.value();
            out.err = 4.0 * kEps * peak * static_cast<double>(k + 1);
            return out;
        }
        const double next = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
        peak = std::max(peak, std::abs(next));
        if (!out.terminating && k > 2) {
            // beyond k ~ |a b| the ratio tends to |z| < 0.95 from above
            const double ratio = std::abs(next) / std::max(std::abs(term), 1e-300);
            if (ratio < 1.0 &&
                std::abs(next) / (1.0 - ratio) <= kEps * 1e-2 * std::abs(s.value())) {
                out.value = s.value();
                out.err = std::abs(next) / (1.0 - ratio) + 4.0 * kEps * peak;
                return out;
            }
        }
        if (k > 100000) throw ConvergenceError("2F1 series did not settle");
        term = next;
    }
}

} // namespace ladder
