#pragma once

// Weighted-path triangles and diamonds in exact rational arithmetic.
//
//   T(0, n)   = [n == start]
//   T(r+1, n) = w_right(n-1) T(r, n-1) + w_left(n) T(r, n+1)
//
// w_right(n) labels the link n -> n+1 and w_left(n) the link n+1 -> n. The
// triangular boundary keeps columns n >= 0 only. Column n read down the rows
// gives the Taylor coefficients of one function of the G_n family.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ladder/algebra.hpp"

namespace ladder {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct WeightRule {
    std::string name;
    std::function<Rational(long)> w_right;
    std::function<Rational(long)> w_left;
};

/// Both links equal lambda_n. Each lambda_n must be rational; the weights throw
/// std::domain_error at generation time otherwise, and NonUnitaryRegime for
/// lambda_n^2 < 0.
WeightRule lambda_symmetric_rule(const AlgebraSpec& spec);
WeightRule tilde_rule(const Rational& p);   ///< w_right = n+1, w_left = n+p
WeightRule bar_rule(const Rational& p);     ///< w_right = n+p, w_left = n+1
WeightRule gauss_tilde_rule();              ///< w_right = 1,   w_left = n+1
WeightRule gauss_bar_rule();                ///< w_right = n+1, w_left = 1
WeightRule unit_rule();

/// Parses "p" or "p/q" (decimal strings such as "0.5" are accepted exactly).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

enum class Boundary { Triangular, Diamond };
std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view name);

/// Occupied sites of one row: columns first_column, first_column + 2, ...
struct DiagramRow {
    long first_column = 0;
    std::vector<Rational> values;
    long last_column() const { return first_column + 2 * (static_cast<long>(values.size()) - 1); }
};

struct CoeffDiagram {
    Boundary boundary = Boundary::Triangular;
    long start_column = 0;
    std::string rule_name;
    std::vector<DiagramRow> rows;

    long num_rows() const { return static_cast<long>(rows.size()); }
    /// T(r, n); zero off the occupied sites.
    Rational value(long r, long n) const;
};

/// Throws std::invalid_argument for num_rows < 1 or a negative triangular start.
CoeffDiagram generate(const WeightRule& rule, Boundary boundary, long start_column, long num_rows);

/// lambda-symmetric diagram in double precision for irrational lambda
/// (e.g. sqrt(n+1)). Inexact by construction; rows as in CoeffDiagram.
struct FloatDiagram {
    Boundary boundary = Boundary::Triangular;
    long start_column = 0;
    std::vector<std::pair<long, std::vector<double>>> rows;
    double value(long r, long n) const;
};
FloatDiagram generate_lambda_float(const AlgebraSpec& spec, Boundary boundary, long start_column,
                                   long num_rows);

/// Re-checks the defining recurrence at every node.
bool check_recurrence(const WeightRule& rule, const CoeffDiagram& d);
/// True when every stored site has r = n - start (mod 2).
bool check_parity(const CoeffDiagram& d);

struct SeriesTerm {
    long power = 0;
    Rational coeff;
};

/// (r, (-1)^((r - (n - start))/2) T(r, n) / r!) over the rows where column n is occupied.
std::vector<SeriesTerm> column_series(const CoeffDiagram& d, long n);
double evaluate_series(const std::vector<SeriesTerm>& series, double y);

/// max over y_grid of |column series(y) - target(y)|.
double series_match(const CoeffDiagram& d, long n, const std::function<double(double)>& target,
                    const std::vector<double>& y_grid);

enum class RowSign { Plain, Alternating };
/// Alternating weights the k-th occupied site of a row, counted from the left, by (-1)^k.
std::vector<Rational> row_sums(const CoeffDiagram& d, RowSign signs);

enum class SumRule { BesselUnity, BesselCos, BesselSin, PhaseUnity, PhaseIntegral };
std::string_view to_string(SumRule r);
SumRule parse_sumrule(std::string_view name);

/// |left - right| for
///   bessel-unity:   J0(2y) + 2 sum_{k=1}^{K} J_{2k}(2y)           = 1
///   bessel-cos:     J0(2y) + 2 sum (-1)^k J_{2k}(2y)              = cos 2y
///   bessel-sin:     2 sum_{k=1}^{K} (-1)^(k+1) J_{2k-1}(2y)       = sin 2y
///   phase-unity:    (1/y) sum_{k=0}^{K} (2k+1) J_{2k+1}(2y)       = 1
///   phase-integral: (1/y) sum_{k=1}^{K} 2k J_{2k}(2y) = int_0^y J_1(2z)/z dz,
/// the integral summed term by term from the series of J_1(2z)/z.
double sumrule_check(SumRule rule, double y, long k_max);

/// Unit weights, triangular boundary, start column m: ballot-path counts.
CoeffDiagram path_count_diagram(long m, long num_rows);

/// One text line per row, node values on alternating columns.
std::string render_ascii(const CoeffDiagram& d);

struct NodeRecord {
    long row = 0;
    long column = 0;
    std::string numerator;
    std::string denominator;
};
/// Every occupied site, zero values included, row-major.
std::vector<NodeRecord> export_nodes(const CoeffDiagram& d);

} // namespace ladder
