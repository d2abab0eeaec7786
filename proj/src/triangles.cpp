#include "ladder/triangles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ladder/errors.hpp"
#include "ladder/phase.hpp"
#include "ladder/special.hpp"

namespace ladder {

namespace {

// Base-10 only: the cpp_int string constructor reads "025" as octal.
BigInt parse_decimal_integer(const std::string& s) {
    size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (k == s.size()) throw std::invalid_argument(s);
    for (size_t i = k; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument(s);
    while (k + 1 < s.size() && s[k] == '0') ++k;
    const BigInt magnitude(s.substr(k));
    return s[0] == '-' ? BigInt(-magnitude) : magnitude;
}

bool perfect_square(const BigInt& v, BigInt& root) {
    if (v < 0) return false;
    root = boost::multiprecision::sqrt(v);
    return root * root == v;
}

Rational exact_lambda_sq(const AlgebraSpec& spec, long n) {
    if (!spec.is_parametric()) return Rational(static_cast<long long>(spec.lambda_sq_ext(n)));
    return Rational(spec.sigma()) * (Rational(spec.alpha()) + n) * (Rational(spec.beta()) + n);
}

Rational exact_lambda(const AlgebraSpec& spec, long n) {
    const Rational x = exact_lambda_sq(spec, n);
    if (x < 0) {
        std::ostringstream os;
        os << "lambda_" << n << "^2 < 0 for " << spec.describe();
        throw NonUnitaryRegime(os.str());
    }
    BigInt num_root, den_root;
    if (!perfect_square(boost::multiprecision::numerator(x), num_root) ||
        !perfect_square(boost::multiprecision::denominator(x), den_root)) {
        std::ostringstream os;
        os << "lambda_" << n << " = sqrt(" << to_string(x)
           << ") is irrational; use generate_lambda_float or a tilde/bar rescaling";
        throw std::domain_error(os.str());
    }
    return Rational(num_root, den_root);
}

long first_site(Boundary b, long start, long r) {
    const long lo = start - r;
    if (b == Boundary::Diamond || lo >= 0) return lo;
    return ((lo % 2) + 2) % 2;
}

Rational factorial(long r) {
    BigInt f = 1;
    for (long k = 2; k <= r; ++k) f *= k;
    return Rational(f);
}

} // namespace

WeightRule lambda_symmetric_rule(const AlgebraSpec& spec) {
    auto lam = [spec](long n) { return exact_lambda(spec, n); };
    return {"lambda-symmetric" + spec.describe(), lam, lam};
}

WeightRule tilde_rule(const Rational& p) {
    return {"tilde(" + to_string(p) + ")", [](long n) { return Rational(n + 1); },
            [p](long n) { return Rational(n) + p; }};
}

WeightRule bar_rule(const Rational& p) {
    return {"bar(" + to_string(p) + ")", [p](long n) { return Rational(n) + p; },
            [](long n) { return Rational(n + 1); }};
}

WeightRule gauss_tilde_rule() {
    return {"gauss-tilde", [](long) { return Rational(1); }, [](long n) { return Rational(n + 1); }};
}

WeightRule gauss_bar_rule() {
    return {"gauss-bar", [](long n) { return Rational(n + 1); }, [](long) { return Rational(1); }};
}

WeightRule unit_rule() {
    return {"unit", [](long) { return Rational(1); }, [](long) { return Rational(1); }};
}

Rational parse_rational(std::string_view text) {
    const std::string s(text);
    try {
        const auto slash = s.find('/');
        if (slash != std::string::npos)
            return Rational(parse_decimal_integer(s.substr(0, slash)), parse_decimal_integer(s.substr(slash + 1)));
        const auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(parse_decimal_integer(s));
        // exact decimal: digits without the point over 10^(fraction length)
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigInt den = 1;
        for (size_t k = dot + 1; k < s.size(); ++k) den *= 10;
        return Rational(parse_decimal_integer(digits), den);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational '" + s + "'");
    }
}

std::string to_string(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

std::string_view to_string(Boundary b) { return b == Boundary::Triangular ? "triangular" : "diamond"; }

Boundary parse_boundary(std::string_view name) {
    if (name == "triangular") return Boundary::Triangular;
    if (name == "diamond") return Boundary::Diamond;
    throw std::invalid_argument("unknown boundary '" + std::string(name) +
                                "' (expected triangular or diamond)");
}

Rational CoeffDiagram::value(long r, long n) const {
    if (r < 0 || r >= num_rows()) return Rational(0);
    const DiagramRow& row = rows[static_cast<size_t>(r)];
    const long off = n - row.first_column;
    if (off < 0 || off % 2 != 0 || n > row.last_column()) return Rational(0);
    return row.values[static_cast<size_t>(off / 2)];
}

CoeffDiagram generate(const WeightRule& rule, Boundary boundary, long start_column, long num_rows) {
    if (num_rows < 1) throw std::invalid_argument("num_rows must be >= 1");
    if (boundary == Boundary::Triangular && start_column < 0)
        throw std::invalid_argument("triangular diagrams start at a column >= 0");
    CoeffDiagram d;
    d.boundary = boundary;
    d.start_column = start_column;
    d.rule_name = rule.name;
    d.rows.push_back({start_column, {Rational(1)}});
    for (long r = 0; r + 1 < num_rows; ++r) {
        DiagramRow next;
        next.first_column = first_site(boundary, start_column, r + 1);
        for (long n = next.first_column; n <= start_column + r + 1; n += 2) {
            Rational v = 0;
            const Rational below = d.value(r, n - 1);
            if (below != 0) v += rule.w_right(n - 1) * below;
            const Rational above = d.value(r, n + 1);
            if (above != 0) v += rule.w_left(n) * above;
            next.values.push_back(std::move(v));
        }
        d.rows.push_back(std::move(next));
    }
    return d;
}

double FloatDiagram::value(long r, long n) const {
    if (r < 0 || r >= static_cast<long>(rows.size())) return 0.0;
    const auto& [first, vals] = rows[static_cast<size_t>(r)];
    const long off = n - first;
    if (off < 0 || off % 2 != 0 || off / 2 >= static_cast<long>(vals.size())) return 0.0;
    return vals[static_cast<size_t>(off / 2)];
}

FloatDiagram generate_lambda_float(const AlgebraSpec& spec, Boundary boundary, long start_column,
                                   long num_rows) {
    if (num_rows < 1) throw std::invalid_argument("num_rows must be >= 1");
    if (boundary == Boundary::Triangular && start_column < 0)
        throw std::invalid_argument("triangular diagrams start at a column >= 0");
    auto lam = [&spec](long n) {
        const long double x = spec.lambda_sq_ext(n);
        if (x < 0) throw NonUnitaryRegime("lambda^2 < 0 for " + spec.describe());
        return static_cast<double>(std::sqrt(x));
    };
    FloatDiagram d;
    d.boundary = boundary;
    d.start_column = start_column;
    d.rows.push_back({start_column, {1.0}});
    for (long r = 0; r + 1 < num_rows; ++r) {
        const long first = first_site(boundary, start_column, r + 1);
        std::vector<double> vals;
        for (long n = first; n <= start_column + r + 1; n += 2)
            vals.push_back(lam(n - 1) * d.value(r, n - 1) + lam(n) * d.value(r, n + 1));
        d.rows.push_back({first, std::move(vals)});
    }
    return d;
}

bool check_recurrence(const WeightRule& rule, const CoeffDiagram& d) {
    for (long r = 0; r + 1 < d.num_rows(); ++r) {
        const DiagramRow& row = d.rows[static_cast<size_t>(r + 1)];
        for (long n = row.first_column; n <= row.last_column(); n += 2) {
            Rational expect = 0;
            if (d.value(r, n - 1) != 0) expect += rule.w_right(n - 1) * d.value(r, n - 1);
            if (d.value(r, n + 1) != 0) expect += rule.w_left(n) * d.value(r, n + 1);
            if (expect != d.value(r + 1, n)) return false;
        }
    }
    return true;
}

bool check_parity(const CoeffDiagram& d) {
    for (long r = 0; r < d.num_rows(); ++r) {
        const long first = d.rows[static_cast<size_t>(r)].first_column;
        if (((r - (first - d.start_column)) % 2 + 2) % 2 != 0) return false;
    }
    return true;
}

std::vector<SeriesTerm> column_series(const CoeffDiagram& d, long n) {
    std::vector<SeriesTerm> out;
    const long shift = n - d.start_column;
    for (long r = 0; r < d.num_rows(); ++r) {
        if (((r - shift) % 2 + 2) % 2 != 0) continue;
        const DiagramRow& row = d.rows[static_cast<size_t>(r)];
        if (n < row.first_column || n > row.last_column()) continue;
        Rational c = d.value(r, n) / factorial(r);
        if (((r - shift) / 2) % 2 != 0) c = -c;
        out.push_back({r, std::move(c)});
    }
    return out;
}

double evaluate_series(const std::vector<SeriesTerm>& series, double y) {
    double sum = 0.0;
    for (const auto& t : series)
        sum += static_cast<double>(t.coeff) * std::pow(y, static_cast<double>(t.power));
    return sum;
}

double series_match(const CoeffDiagram& d, long n, const std::function<double(double)>& target,
                    const std::vector<double>& y_grid) {
    const auto series = column_series(d, n);
    double worst = 0.0;
    for (double y : y_grid) worst = std::max(worst, std::abs(evaluate_series(series, y) - target(y)));
    return worst;
}

std::vector<Rational> row_sums(const CoeffDiagram& d, RowSign signs) {
    std::vector<Rational> out;
    for (const auto& row : d.rows) {
        Rational s = 0;
        for (size_t k = 0; k < row.values.size(); ++k) {
            if (signs == RowSign::Alternating && k % 2 == 1)
                s -= row.values[k];
            else
                s += row.values[k];
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string_view to_string(SumRule r) {
    switch (r) {
    case SumRule::BesselUnity: return "bessel-unity";
    case SumRule::BesselCos: return "bessel-cos";
    case SumRule::BesselSin: return "bessel-sin";
    case SumRule::PhaseUnity: return "phase-unity";
    case SumRule::PhaseIntegral: return "phase-integral";
    }
    return "?";
}

SumRule parse_sumrule(std::string_view name) {
    for (SumRule r : {SumRule::BesselUnity, SumRule::BesselCos, SumRule::BesselSin,
                      SumRule::PhaseUnity, SumRule::PhaseIntegral})
        if (name == to_string(r)) return r;
    throw std::invalid_argument("unknown sum rule '" + std::string(name) + "'");
}

double sumrule_check(SumRule rule, double y, long k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    const double x = 2 * y;
    double left = 0.0, right = 0.0;
    switch (rule) {
    case SumRule::BesselUnity:
        left = bessel_jn(0, x);
        for (long k = 1; k <= k_max; ++k) left += 2 * bessel_jn(2 * k, x);
        right = 1.0;
        break;
    case SumRule::BesselCos:
        left = bessel_jn(0, x);
        for (long k = 1; k <= k_max; ++k) left += (k % 2 ? -2.0 : 2.0) * bessel_jn(2 * k, x);
        right = std::cos(x);
        break;
    case SumRule::BesselSin:
        for (long k = 1; k <= k_max; ++k) left += (k % 2 ? 2.0 : -2.0) * bessel_jn(2 * k - 1, x);
        right = std::sin(x);
        break;
    case SumRule::PhaseUnity:
        for (long k = 0; k <= k_max; ++k) left += phase_gn(2 * k, y);
        right = 1.0;
        break;
    case SumRule::PhaseIntegral: {
        for (long k = 1; k <= k_max; ++k) left += phase_gn(2 * k - 1, y);
        // sum_j (-1)^j y^(2j+1) / ((2j+1) j! (j+1)!)
        double term = y;  // y^(2j+1) / (j! (j+1)!) at j = 0
        for (long j = 0; j < 200; ++j) {
            const double add = (j % 2 ? -term : term) / static_cast<double>(2 * j + 1);
            right += add;
            if (std::abs(add) < 1e-20 * std::abs(right) && j > std::abs(y)) break;
            term *= y * y / static_cast<double>((j + 1) * (j + 2));
        }
        break;
    }
    }
    return std::abs(left - right);
}

CoeffDiagram path_count_diagram(long m, long num_rows) {
    return generate(unit_rule(), Boundary::Triangular, m, num_rows);
}

std::string render_ascii(const CoeffDiagram& d) {
    long lo = d.start_column, hi = d.start_column;
    size_t width = 1;
    for (const auto& row : d.rows) {
        lo = std::min(lo, row.first_column);
        hi = std::max(hi, row.last_column());
        for (const auto& v : row.values) width = std::max(width, to_string(v).size());
    }
    const size_t cell = width + 1;
    std::ostringstream os;
    os << "n:";
    for (long n = lo; n <= hi; ++n) {
        const std::string label = std::to_string(n);
        os << std::string(cell - std::min(cell, label.size()), ' ') << label;
    }
    os << '\n';
    for (long r = 0; r < d.num_rows(); ++r) {
        const DiagramRow& row = d.rows[static_cast<size_t>(r)];
        std::string line = "  ";
        for (long n = lo; n <= hi; ++n) {
            std::string text;
            if (n >= row.first_column && n <= row.last_column() && (n - row.first_column) % 2 == 0)
                text = to_string(d.value(r, n));
            line += std::string(cell - text.size(), ' ') + text;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    }
    return os.str();
}

std::vector<NodeRecord> export_nodes(const CoeffDiagram& d) {
    std::vector<NodeRecord> out;
    for (long r = 0; r < d.num_rows(); ++r) {
        const DiagramRow& row = d.rows[static_cast<size_t>(r)];
        for (size_t k = 0; k < row.values.size(); ++k) {
            const Rational& v = row.values[k];
            out.push_back({r, row.first_column + 2 * static_cast<long>(k),
                           boost::multiprecision::numerator(v).str(),
                           boost::multiprecision::denominator(v).str()});
        }
    }
    return out;
}

} // namespace ladder
