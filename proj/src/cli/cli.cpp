#include "ladder/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli_internal.hpp"
#include "ladder/algebra.hpp"
#include "ladder/errors.hpp"
#include "ladder/expm.hpp"
#include "ladder/factorization.hpp"
#include "ladder/gn.hpp"
#include "ladder/parallel.hpp"
#include "ladder/phase.hpp"
#include "ladder/rotations.hpp"
#include "ladder/special.hpp"
#include "ladder/triangles.hpp"

namespace ladder::cli {

namespace {

const std::vector<std::string> kSubcommands = {"check-algebra", "factorize", "gn",     "triangle",
                                               "rotate",        "phase",     "sumrule"};

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Options {
    std::string command;
    // global
    std::string format = "json";
    std::string out;
    std::string window;
    long pad = -1;
    double tol = kUnset;
    std::vector<std::string> sweeps;
    unsigned jobs = 0;
    // algebra
    std::string alpha, beta, sigma, profile;
    // factorize
    int u = 1;
    std::string y = "";
    std::string a = "0", b = "0", c = "0";
    std::string ordering = "both";
    std::string core = "0:11";
    // gn / phase
    std::string n, m;
    std::string route = "auto";
    std::string variant;
    std::string p = "1";
    double rec_tol = 1e-8;
    long size = 60;
    // triangle
    std::string rule = "unit";
    std::string boundary = "triangular";
    long start = 0;
    long rows = 8;
    std::string columns;
    bool render_diagram = false;
    // rotate
    std::string omega = "0.3", theta = "0.7", phi = "0.2", j = "1";
    std::string method = "all";
    // sumrule
    std::string name = "all";
    long k_max = 16;
};

// ---- value parsing -------------------------------------------------------

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    size_t from = 0;
    while (true) {
        const size_t at = s.find(sep, from);
        parts.push_back(trim(s.substr(from, at == std::string_view::npos ? std::string_view::npos : at - from)));
        if (at == std::string_view::npos) break;
        from = at + 1;
    }
    return parts;
}

double plain_double(const std::string& s, std::string_view what) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw ConfigError("cannot read " + std::string(what) + " from '" + s + "'");
    return v;
}

// Reals: "0.5", "1/2", "pi", "-pi/4", "3pi/2".
double parse_number(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    const auto slash = t.find('/');
    std::string num = t.substr(0, slash);
    double scale = 1.0;
    if (num.size() >= 2 && num.compare(num.size() - 2, 2, "pi") == 0) {
        num.resize(num.size() - 2);
        scale = std::numbers::pi;
        if (num.empty() || num == "+") num = "1";
        if (num == "-") num = "-1";
    }
    double v = plain_double(num, what) * scale;
    if (slash != std::string::npos) {
        const double den = plain_double(t.substr(slash + 1), what);
        if (den == 0.0) throw ConfigError(std::string(what) + " has a zero denominator");
        v /= den;
    }
    if (!std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite");
    return v;
}

// Complex: "re,im", "x+yi", "yi", "-i", "x".
Complex parse_complex(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    if (t.find(',') != std::string::npos) {
        const auto parts = split(t, ',');
        if (parts.size() != 2) throw ConfigError(std::string(what) + " expects 're,im'");
        return {parse_number(parts[0], what), parse_number(parts[1], what)};
    }
    if (t.empty()) throw ConfigError(std::string(what) + " is empty");
    if (t.back() != 'i' && t.back() != 'j') return {parse_number(t, what), 0.0};
    const std::string body = t.substr(0, t.size() - 1);
    size_t cut = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    const std::string re = cut == std::string::npos ? "" : body.substr(0, cut);
    std::string im = cut == std::string::npos ? body : body.substr(cut);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : parse_number(re, what), parse_number(im, what)};
}

std::pair<long, long> parse_range(std::string_view text, std::string_view what) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw ConfigError(std::string(what) + " expects 'lo:hi'");
    const double lo = plain_double(parts[0], what), hi = plain_double(parts[1], what);
    if (lo != std::floor(lo) || hi != std::floor(hi) || lo > hi)
        throw ConfigError(std::string(what) + " expects integers lo <= hi");
    return {static_cast<long>(lo), static_cast<long>(hi)};
}

// "0:4,7" -> 0 1 2 3 4 7
std::vector<long> parse_long_list(std::string_view text, std::string_view what) {
    std::vector<long> out;
    for (const auto& part : split(text, ',')) {
        if (part.find(':') != std::string::npos) {
            const auto [lo, hi] = parse_range(part, what);
            for (long k = lo; k <= hi; ++k) out.push_back(k);
        } else {
            const double v = plain_double(part, what);
            if (v != std::floor(v)) throw ConfigError(std::string(what) + " expects integers");
            out.push_back(static_cast<long>(v));
        }
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_number(part, what));
    return out;
}

double tol_or(const Options& o, double fallback) { return std::isnan(o.tol) ? fallback : o.tol; }

// ---- shared report pieces ---------------------------------------------------

std::optional<AlgebraSpec> optional_spec(const Options& o) {
    const bool any = !o.alpha.empty() || !o.beta.empty() || !o.sigma.empty();
    if (any && !o.profile.empty()) throw ConfigError("give either --alpha/--beta/--sigma or --profile, not both");
    if (!o.profile.empty()) {
        try {
            return AlgebraSpec::profile(parse_profile(o.profile));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (!any) return std::nullopt;
    if (o.alpha.empty() || o.beta.empty() || o.sigma.empty())
        throw ConfigError("--alpha, --beta and --sigma must be given together");
    return AlgebraSpec::parametric(parse_number(o.alpha, "--alpha"), parse_number(o.beta, "--beta"),
                                   parse_number(o.sigma, "--sigma"));
}

AlgebraSpec require_spec(const Options& o) {
    auto spec = optional_spec(o);
    if (!spec) throw ConfigError("an algebra is required: --alpha A --beta B --sigma S, or --profile NAME");
    return *spec;
}

Json spec_json(const AlgebraSpec& s) {
    if (s.is_parametric()) return Json{{"alpha", s.alpha()}, {"beta", s.beta()}, {"sigma", s.sigma()}};
    return Json{{"profile", std::string(to_string(s.profile_kind()))}};
}

Json window_json(const IndexWindow& w) {
    return Json{{"j_min", w.j_min()}, {"j_max", w.j_max()}, {"core_lo", w.core_lo()}, {"core_hi", w.core_hi()}};
}

Json rational_json(const Rational& q) {
    return Json{{"num", boost::multiprecision::numerator(q).str()},
                {"den", boost::multiprecision::denominator(q).str()}};
}

// ---- subcommands ------------------------------------------------------------

Json cmd_check_algebra(const Options& o) {
    const AlgebraSpec spec = require_spec(o);
    const auto [lo, hi] = parse_range(o.window.empty() ? "0:16" : o.window, "--window");
    const long inset = o.pad >= 0 ? o.pad : 2;
    // A closed edge is exact, so only open edges lose states to the core.
    const long core_lo = closed_below(spec, lo) ? lo : lo + inset;
    const long core_hi = closed_above(spec, hi) ? hi : hi - inset;
    if (core_lo > core_hi) throw ConfigError("window too small for a core inset of " + std::to_string(inset));
    const IndexWindow window = IndexWindow::make(lo, hi, core_lo, core_hi);
    const LadderMatrices mats = build_matrices(spec, window);
    const double tol = tol_or(o, 1e-12);
    const double residual = spec.is_parametric() ? commutator_residual(mats, spec) : lr_commutator_residual(mats);

    Json s_diag = Json::array();
    bool impulse = window.in_core(0);
    for (long j = core_lo; j <= core_hi; ++j) {
        const double v = mats.S_at(j, j).real();
        s_diag.push_back(v);
        impulse = impulse && v == (j == 0 ? 1.0 : 0.0);
    }
    Json blocks = Json::array();
    for (const auto& b : detect_blocks(spec, window.range())) blocks.push_back(Json::array({b.lo, b.hi}));

    Json r;
    r["command"] = "check-algebra";
    r["spec"] = spec_json(spec);
    r["window"] = window_json(window);
    r["relations"] = spec.is_parametric() ? "[L,R]=S, [L,S]=2sigma L, [S,R]=2sigma R" : "[L,R]=S";
    r["closure_residual"] = residual;
    r["hermitian_residual"] = max_abs(mats.L - mats.R.adjoint());
    r["blocks"] = blocks;
    r["S_diagonal"] = s_diag;
    r["S_unit_impulse"] = impulse;
    r["tol"] = tol;
    r["ok"] = residual <= tol;
    return r;
}

Json cmd_factorize(const Options& o) {
    const AlgebraSpec spec = require_spec(o);
    if (o.u != 1 && o.u != 2) throw ConfigError("--u must be 1 or 2");
    Exponent e;
    double scale = 0.0;
    ScalarFactors factors;
    Json factors_json;
    // Factors first: a pole is reported before any window is built.
    if (o.u == 1) {
        const double y = parse_number(o.y.empty() ? "0.3" : o.y, "--y");
        e = U1Exponent{y};
        scale = std::abs(y);
        factors = u1_factors(spec, y);
        factors_json = Json{{"f", to_json(factors.f)}, {"g", to_json(factors.g)}};
    } else {
        const Complex a = parse_complex(o.a, "--a"), b = parse_complex(o.b, "--b"), c = parse_complex(o.c, "--c");
        e = U2Exponent{a, b, c};
        scale = std::max(std::abs(a), std::abs(b));
        factors = u2_factors(spec, a, b, c);
        factors_json = Json{{"q_sq", to_json(factors.q_sq)},   {"f_plus", to_json(factors.f_plus)},
                            {"f_minus", to_json(factors.f_minus)}, {"g_plus", to_json(factors.g_plus)},
                            {"g_minus", to_json(factors.g_minus)}};
    }

    const auto [clo, chi] = parse_range(o.core, "--core");
    IndexWindow window = IndexWindow::full(clo, chi == clo ? clo + 1 : chi);
    if (!o.window.empty()) {
        const auto [lo, hi] = parse_range(o.window, "--window");
        window = IndexWindow::make(lo, hi, clo, chi);
    } else {
        const long pad = o.pad >= 0 ? o.pad : default_padding(spec, {clo, chi}, scale);
        window = padded_window(spec, {clo, chi}, pad);
    }

    std::vector<Ordering> orderings;
    if (o.ordering == "both") {
        orderings = {Ordering::Normal, Ordering::AntiNormal};
    } else {
        try {
            orderings = {parse_ordering(o.ordering)};
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(ex.what());
        }
    }

    const double tol = tol_or(o, 1e-10);
    bool ok = true;
    Json residuals = Json::object();
    for (Ordering ord : orderings) {
        const double res = factorization_residual(spec, window, e, ord);
        residuals[std::string(to_string(ord))] = res;
        ok = ok && res <= tol;
    }
    const double cert = pad_certificate(spec, window, to_coeffs(e));
    ok = ok && cert <= tol;

    Json r;
    r["command"] = "factorize";
    r["spec"] = spec_json(spec);
    r["u"] = o.u;
    if (o.u == 1) {
        r["y"] = std::get<U1Exponent>(e).y;
    } else {
        const auto& x = std::get<U2Exponent>(e);
        r["a"] = to_json(x.a);
        r["b"] = to_json(x.b);
        r["c"] = to_json(x.c);
    }
    r["window"] = window_json(window);
    r["factors"] = factors_json;
    r["residual"] = residuals;
    r["pad_certificate"] = cert;
    if (o.u == 2) {
        const auto& x = std::get<U2Exponent>(e);
        const bool shape = x.a == x.b && x.c == Complex(0.0, 0.0) && x.a.real() == 0.0;
        if (shape) {
            double dev = 0.0;
            const IndexRange core = window.core();
            for (Ordering ord : orderings)
                dev = std::max(dev, max_abs(ordered_block(spec, e, ord, core, core) -
                                            ordered_block(spec, U1Exponent{x.a.imag()}, ord, core, core)));
            r["reduces-to-U1"] = dev <= 1e-12;
            r["reduction_deviation"] = dev;
            ok = ok && dev <= 1e-12;
        } else {
            r["reduces-to-U1"] = false;
        }
    }
    r["tol"] = tol;
    r["ok"] = ok;
    return r;
}

Json cmd_gn_variant(const Options& o) {
    Variant v{};
    try {
        v = parse_variant(o.variant);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const double p = parse_number(o.p, "--p");
    const auto ns = parse_long_list(o.n.empty() ? "0:4" : o.n, "--n");
    const auto ys = parse_double_list(o.y.empty() ? "0.5" : o.y, "--y");
    Json table = Json::array();
    bool ok = true;
    for (long n : ns)
        for (double y : ys) {
            const double rec = variant_recursion_residual(v, p, n, y);
            ok = ok && rec <= o.rec_tol;
            table.push_back(Json{{"n", n}, {"y", y}, {"value", tilde_bar_variants(p, n, y, v)},
                                 {"recursion_residual", rec}});
        }
    Json r;
    r["command"] = "gn";
    r["variant"] = std::string(to_string(v));
    r["p"] = p;
    r["rec_tol"] = o.rec_tol;
    r["ok"] = ok;
    r["table"] = table;
    return r;
}

Json cmd_gn(const Options& o) {
    if (!o.variant.empty()) return cmd_gn_variant(o);
    const AlgebraSpec spec = require_spec(o);
    const auto ns = parse_long_list(o.n.empty() ? "0:4" : o.n, "--n");
    const auto ys = parse_double_list(o.y.empty() ? "0.5" : o.y, "--y");
    const bool with_m = !o.m.empty();
    const auto ms = with_m ? parse_long_list(o.m, "--m") : std::vector<long>{0};
    static const std::vector<std::string> routes = {"auto", "closed", "series", "oracle", "all"};
    if (std::find(routes.begin(), routes.end(), o.route) == routes.end())
        throw ConfigError("--route must be auto, closed, series, oracle or all");
    const double tol = tol_or(o, 1e-9);

    using Eval = std::function<GnEvaluation()>;
    Json table = Json::array();
    bool ok = true;
    for (long n : ns)
        for (long m : ms) {
            if (with_m && (m < 0 || n < m)) continue;
            for (double y : ys) {
                std::vector<std::pair<std::string, Eval>> candidates;
                if (with_m) {
                    candidates.emplace_back("closed", [&] { return gnm(spec, n, m, y); });
                    candidates.emplace_back("oracle", [&] { return gnm_oracle(spec, n, m, y); });
                } else {
                    candidates.emplace_back("closed", [&] {
                        return spec.is_parametric() ? gn_closed(spec, n, y) : gn_evaluate(spec, n, y);
                    });
                    candidates.emplace_back("series", [&] { return gn_series(spec, n, y); });
                    candidates.emplace_back("oracle", [&] { return gn_oracle(spec, n, y); });
                }

                Json row;
                row["n"] = n;
                if (with_m) row["m"] = m;
                row["y"] = y;
                if (o.route == "all") {
                    std::vector<Complex> got;
                    std::optional<GnEvaluation> first;
                    for (const auto& [label, fn] : candidates) {
                        try {
                            const GnEvaluation ev = fn();
                            row[label] = to_json(ev.value);
                            got.push_back(ev.value);
                            if (!first) first = ev;
                        } catch (const ladder::Error&) {
                            row[label] = nullptr;
                        } catch (const std::invalid_argument&) {
                            row[label] = nullptr;
                        }
                    }
                    double spread = 0.0;
                    for (size_t i = 0; i < got.size(); ++i)
                        for (size_t k = i + 1; k < got.size(); ++k) spread = std::max(spread, std::abs(got[i] - got[k]));
                    row["routes_available"] = static_cast<long>(got.size());
                    row["spread"] = spread;
                    ok = ok && spread <= tol && !got.empty();
                } else {
                    GnEvaluation ev;
                    if (o.route == "auto") {
                        ev = with_m ? (spec.is_parametric() ? gnm(spec, n, m, y) : gnm_oracle(spec, n, m, y))
                                    : gn_evaluate(spec, n, y);
                    } else {
                        const auto it = std::find_if(candidates.begin(), candidates.end(),
                                                     [&](const auto& c) { return c.first == o.route; });
                        if (it == candidates.end()) throw ConfigError("route '" + o.route + "' is not available with --m");
                        ev = it->second();
                    }
                    row["route"] = std::string(to_string(ev.route));
                    row["value"] = to_json(ev.value);
                    row["err_estimate"] = ev.err_estimate;
                }
                if (!with_m) {
                    const double rec = recursion_residual(spec, n, y);
                    row["recursion_residual"] = rec;
                    ok = ok && rec <= o.rec_tol;
                }
                table.push_back(std::move(row));
            }
        }
    Json r;
    r["command"] = "gn";
    r["spec"] = spec_json(spec);
    r["route"] = o.route;
    r["tol"] = tol;
    r["rec_tol"] = o.rec_tol;
    r["ok"] = ok;
    r["table"] = table;
    return r;
}

WeightRule make_rule(const Options& o) {
    if (o.rule == "unit") return unit_rule();
    if (o.rule == "tilde" || o.rule == "bar") {
        Rational p;
        try {
            p = parse_rational(o.p);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        return o.rule == "tilde" ? tilde_rule(p) : bar_rule(p);
    }
    if (o.rule == "gauss-tilde") return gauss_tilde_rule();
    if (o.rule == "gauss-bar") return gauss_bar_rule();
    if (o.rule == "lambda") return lambda_symmetric_rule(require_spec(o));
    throw ConfigError("--rule must be unit, tilde, bar, gauss-tilde, gauss-bar or lambda");
}

Json cmd_triangle(const Options& o) {
    const WeightRule rule = make_rule(o);
    Boundary boundary{};
    try {
        boundary = parse_boundary(o.boundary);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (o.rows < 1 || o.rows > 400) throw ConfigError("--rows must lie in 1..400");
    const CoeffDiagram d = generate(rule, boundary, o.start, o.rows);

    std::vector<long> columns;
    if (!o.columns.empty()) {
        columns = parse_long_list(o.columns, "--column");
    } else {
        long lo = o.start, hi = o.start;
        for (const auto& row : d.rows) {
            lo = std::min(lo, row.first_column);
            hi = std::max(hi, row.last_column());
        }
        for (long n = lo; n <= hi; ++n) columns.push_back(n);
    }
    Json series = Json::array();
    for (long n : columns) {
        Json terms = Json::array();
        for (const auto& t : column_series(d, n)) terms.push_back(Json{{"power", t.power}, {"coeff", rational_json(t.coeff)}});
        series.push_back(Json{{"column", n}, {"terms", terms}});
    }
    Json plain = Json::array(), alternating = Json::array();
    for (const auto& q : row_sums(d, RowSign::Plain)) plain.push_back(rational_json(q));
    for (const auto& q : row_sums(d, RowSign::Alternating)) alternating.push_back(rational_json(q));
    Json table = Json::array();
    for (const auto& nd : export_nodes(d))
        table.push_back(Json{{"row", nd.row}, {"column", nd.column}, {"numerator", nd.numerator},
                             {"denominator", nd.denominator}});

    const bool rec = check_recurrence(rule, d), parity = check_parity(d);
    Json r;
    r["command"] = "triangle";
    r["rule"] = rule.name;
    r["boundary"] = std::string(to_string(boundary));
    r["start"] = o.start;
    r["rows"] = o.rows;
    r["recurrence_ok"] = rec;
    r["parity_ok"] = parity;
    r["row_sums"] = Json{{"plain", plain}, {"alternating", alternating}};
    r["column_series"] = series;
    r["ok"] = rec && parity;
    if (o.render_diagram) r["diagram"] = render_ascii(d);
    r["table"] = table;
    return r;
}

Json cmd_rotate(const Options& o) {
    const RotationSpec spec = make_rotation(parse_number(o.omega, "--omega"), parse_number(o.theta, "--theta"),
                                            parse_number(o.phi, "--phi"), parse_number(o.j, "--j"));
    static const std::vector<std::string> all = {"factorized", "direct", "antinormal", "u2"};
    std::vector<std::string> methods;
    if (o.method == "all") {
        methods = all;
    } else {
        for (const auto& mname : split(o.method, ',')) {
            if (std::find(all.begin(), all.end(), mname) == all.end())
                throw ConfigError("--method must be all or a list of factorized, direct, antinormal, u2");
            methods.push_back(mname);
        }
    }
    std::vector<Matrix> mats;
    for (const auto& mname : methods) {
        if (mname == "factorized") mats.push_back(rotation_factorized(spec));
        else if (mname == "direct") mats.push_back(rotation_direct(spec));
        else if (mname == "antinormal") mats.push_back(antinormal_rotation(spec));
        else mats.push_back(rotation_via_u2(spec));
    }
    const double tol = tol_or(o, 1e-11);
    bool ok = true;
    Json deviations = Json::object(), unitarity = Json::object();
    for (size_t i = 0; i < mats.size(); ++i) {
        const Matrix id = Matrix::Identity(mats[i].rows(), mats[i].cols());
        const double u = max_abs(mats[i] * mats[i].adjoint() - id);
        unitarity[methods[i]] = u;
        ok = ok && u <= tol;
        for (size_t k = i + 1; k < mats.size(); ++k) {
            const double dev = max_abs(mats[i] - mats[k]);
            deviations[methods[i] + "-" + methods[k]] = dev;
            ok = ok && dev <= tol;
        }
    }
    Json table = Json::array();
    for (size_t i = 0; i < mats.size(); ++i)
        for (long r = 0; r < mats[i].rows(); ++r)
            for (long c = 0; c < mats[i].cols(); ++c)
                table.push_back(Json{{"method", methods[i]},
                                     {"row", r},
                                     {"col", c},
                                     {"m_row", static_cast<double>(r) - spec.j},
                                     {"m_col", static_cast<double>(c) - spec.j},
                                     {"value", to_json(mats[i](r, c))}});
    Json r;
    r["command"] = "rotate";
    r["omega"] = spec.omega;
    r["theta"] = spec.theta;
    r["phi"] = spec.phi;
    r["j"] = spec.j;
    r["derived"] = Json{{"a", to_json(spec.a)}, {"b", to_json(spec.b)}, {"c", to_json(spec.c)},
                        {"s", to_json(spec.s)}, {"h", spec.singular ? Json(nullptr) : to_json(spec.h)}};
    r["deviations"] = deviations;
    r["unitarity"] = unitarity;
    r["tol"] = tol;
    r["ok"] = ok;
    r["table"] = table;
    return r;
}

Json cmd_phase(const Options& o) {
    const auto ns = parse_long_list(o.n.empty() ? "0:4" : o.n, "--n");
    const auto ms = parse_long_list(o.m.empty() ? "0" : o.m, "--m");
    const auto ys = parse_double_list(o.y.empty() ? "0.5" : o.y, "--y");
    long reach = 0;
    for (long n : ns) reach = std::max(reach, n);
    for (long m : ms) reach = std::max(reach, m);
    if (o.size < reach + 2) throw ConfigError("--size must exceed every requested index by at least 2");
    for (long n : ns)
        if (n < 0) throw ConfigError("--n must be non-negative");
    for (long m : ms)
        if (m < 0) throw ConfigError("--m must be non-negative");

    const double tol = tol_or(o, 1e-10);
    const PhaseMatrices pm = build_phase(o.size);
    const Eigen::MatrixXi comm = phase_commutator(pm);
    const bool impulse = is_unit_impulse(comm, o.size - 1);
    bool ok = impulse;
    Json table = Json::array();
    for (long n : ns)
        for (long m : ms)
            for (double y : ys) {
                const Complex closed = phase_element(n, m, y);
                const Complex brute = phase_oracle(n, m, y, o.size);
                const double dev = std::abs(closed - brute);
                ok = ok && dev <= tol;
                Json row{{"n", n}, {"m", m}, {"y", y}, {"element", to_json(closed)}, {"oracle", to_json(brute)},
                         {"deviation", dev}, {"G_nm", phase_gnm(n, m, y)}};
                if (m == 0) row["recursion_residual"] = phase_recursion_residual(n, y);
                table.push_back(std::move(row));
            }
    Json r;
    r["command"] = "phase";
    r["size"] = o.size;
    r["commutator_unit_impulse"] = impulse;
    r["commutator_edge"] = comm(o.size - 1, o.size - 1);
    r["tol"] = tol;
    r["ok"] = ok;
    r["table"] = table;
    return r;
}

Json cmd_sumrule(const Options& o) {
    std::vector<SumRule> rules;
    if (o.name == "all") {
        rules = {SumRule::BesselUnity, SumRule::BesselCos, SumRule::BesselSin, SumRule::PhaseUnity,
                 SumRule::PhaseIntegral};
    } else {
        try {
            for (const auto& part : split(o.name, ',')) rules.push_back(parse_sumrule(part));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (o.k_max < 1) throw ConfigError("--k-max must be >= 1");
    const auto ys = parse_double_list(o.y.empty() ? "0.4,0.8" : o.y, "--y");
    const double tol = tol_or(o, 1e-10);
    bool ok = true;
    Json table = Json::array();
    for (SumRule rule : rules)
        for (double y : ys) {
            const double res = sumrule_check(rule, y, o.k_max);
            ok = ok && res <= tol;
            table.push_back(Json{{"rule", std::string(to_string(rule))}, {"y", y}, {"k_max", o.k_max}, {"residual", res}});
        }
    Json r;
    r["command"] = "sumrule";
    r["tol"] = tol;
    r["ok"] = ok;
    r["table"] = table;
    return r;
}

Json dispatch(const Options& o) {
    if (o.command == "check-algebra") return cmd_check_algebra(o);
    if (o.command == "factorize") return cmd_factorize(o);
    if (o.command == "gn") return cmd_gn(o);
    if (o.command == "triangle") return cmd_triangle(o);
    if (o.command == "rotate") return cmd_rotate(o);
    if (o.command == "phase") return cmd_phase(o);
    if (o.command == "sumrule") return cmd_sumrule(o);
    throw ConfigError("unknown subcommand '" + o.command + "'");
}

// ---- argument parsing -------------------------------------------------------

void add_spec_flags(CLI::App* sub, Options& o) {
    sub->add_option("--alpha", o.alpha, "alpha in lambda_j^2 = sigma (alpha + j)(beta + j)");
    sub->add_option("--beta", o.beta, "beta");
    sub->add_option("--sigma", o.sigma, "sigma");
    sub->add_option("--profile", o.profile, "sho, constant-one or phase");
}

std::unique_ptr<CLI::App> build_app(Options& o) {
    auto app = std::make_unique<CLI::App>("Generalized ladder algebras: factorizations, G_n functions, "
                                          "coefficient triangles, rotations and phase operators.",
                                          "ladder");
    app->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app->require_subcommand(1);
    app->add_option("--format", o.format, "json, csv or ascii")->check(CLI::IsMember({"json", "csv", "ascii"}));
    app->add_option("--out", o.out, "write output to this path instead of stdout");
    app->add_option("--tol", o.tol, "tolerance override");
    app->add_option("--window", o.window, "index window lo:hi");
    app->add_option("--pad", o.pad, "padding / core inset override");
    app->add_option("--sweep", o.sweeps, "KEY=v1,v2,... grid over a flag (repeatable)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app->add_option("--jobs", o.jobs, "worker threads for --sweep (0 = all cores)");
    app->add_option("--config", "JSON file of flags (handled before parsing)");

    auto sub = [&](const std::string& name, const std::string& help) {
        CLI::App* s = app->add_subcommand(name, help);
        s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        s->fallthrough(true);
        return s;
    };

    CLI::App* check = sub("check-algebra", "closure residuals and block structure of a window");
    add_spec_flags(check, o);

    CLI::App* fact = sub("factorize", "ordered forms of U1 or U2 against the expm oracle");
    add_spec_flags(fact, o);
    fact->add_option("--u", o.u, "1 for exp(iy(R+L)), 2 for exp(aL+bR+cS)");
    fact->add_option("--y", o.y, "U1 parameter");
    fact->add_option("--a", o.a, "U2 coefficient of L (re,im or x+yi)");
    fact->add_option("--b", o.b, "U2 coefficient of R");
    fact->add_option("--c", o.c, "U2 coefficient of S");
    fact->add_option("--ordering", o.ordering, "normal, anti-normal or both");
    fact->add_option("--core", o.core, "certified core lo:hi");

    CLI::App* gn = sub("gn", "G_n / G_nm by closed form, series and oracle");
    add_spec_flags(gn, o);
    gn->add_option("--n", o.n, "indices, e.g. 0:4 or 1,3");
    gn->add_option("--m", o.m, "second index for G_nm");
    gn->add_option("--y", o.y, "comma-separated y values");
    gn->add_option("--route", o.route, "auto, closed, series, oracle or all");
    gn->add_option("--variant", o.variant, "tilde, bar, gauss-tilde or gauss-bar");
    gn->add_option("--p", o.p, "variant parameter p");
    gn->add_option("--rec-tol", o.rec_tol, "recursion residual tolerance");

    CLI::App* tri = sub("triangle", "exact coefficient triangles and diamonds");
    add_spec_flags(tri, o);
    tri->add_option("--rule", o.rule, "unit, tilde, bar, gauss-tilde, gauss-bar or lambda");
    tri->add_option("--p", o.p, "rational parameter of tilde/bar");
    tri->add_option("--boundary", o.boundary, "triangular or diamond");
    tri->add_option("--start", o.start, "start column");
    tri->add_option("--rows", o.rows, "number of rows");
    tri->add_option("--column", o.columns, "columns to expand as series");
    tri->add_flag("--render", o.render_diagram, "include the staggered text diagram");

    CLI::App* rot = sub("rotate", "SU(2) rotation matrices by several routes");
    rot->add_option("--omega", o.omega, "rotation parameter omega");
    rot->add_option("--theta", o.theta, "polar angle of the axis");
    rot->add_option("--phi", o.phi, "azimuth of the axis");
    rot->add_option("--j", o.j, "spin j (half-integer)");
    rot->add_option("--method", o.method, "all or a list of factorized, direct, antinormal, u2");

    CLI::App* ph = sub("phase", "phase-operator matrix elements against brute force");
    ph->add_option("--n", o.n, "row indices");
    ph->add_option("--m", o.m, "column indices");
    ph->add_option("--y", o.y, "comma-separated y values");
    ph->add_option("--size", o.size, "brute-force window size");

    CLI::App* sr = sub("sumrule", "Bessel and phase-operator sum rules");
    sr->add_option("--name", o.name, "all or a list of bessel-unity, bessel-cos, bessel-sin, phase-unity, phase-integral");
    sr->add_option("--y", o.y, "comma-separated y values");
    sr->add_option("--k-max", o.k_max, "number of terms");
    return app;
}

struct HelpRequested {
    std::string text;
};

Options parse_options(const std::vector<std::string>& args) {
    Options o;
    auto app = build_app(o);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app->parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app->help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app->help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    for (const CLI::App* s : app->get_subcommands()) o.command = s->get_name();
    return o;
}

// ---- errors and execution ---------------------------------------------------

std::string error_name(const std::exception& e) {
    if (dynamic_cast<const NonUnitaryRegime*>(&e)) return "NonUnitaryRegime";
    if (dynamic_cast<const PoleError*>(&e)) return "PoleError";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
    if (dynamic_cast<const OverflowError*>(&e)) return "OverflowError";
    if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
    if (dynamic_cast<const SingularS*>(&e)) return "SingularS";
    if (dynamic_cast<const UnsupportedAlgebra*>(&e)) return "UnsupportedAlgebra";
    if (dynamic_cast<const std::domain_error*>(&e)) return "DomainError";
    return "Error";
}

struct Outcome {
    Json report;
    int code = kOk;
    std::string message;
};

// Domain failures become a report; configuration failures propagate.
Outcome execute(const Options& o) {
    Outcome out;
    try {
        out.report = dispatch(o);
        out.code = out.report.value("ok", true) ? kOk : kToleranceViolation;
    } catch (const ladder::Error& e) {
        out.code = kDomainError;
        out.message = error_name(e) + ": " + e.what();
        out.report = Json{{"command", o.command}, {"error", error_name(e)}, {"message", e.what()}};
    } catch (const std::domain_error& e) {
        out.code = kDomainError;
        out.message = error_name(e) + ": " + e.what();
        out.report = Json{{"command", o.command}, {"error", error_name(e)}, {"message", e.what()}};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return out;
}

struct SweepAxis {
    std::string key;
    std::vector<std::string> values;
};

std::vector<SweepAxis> parse_sweeps(const std::vector<std::string>& specs) {
    std::vector<SweepAxis> axes;
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
            throw ConfigError("--sweep expects KEY=v1,v2,..., got '" + s + "'");
        SweepAxis axis{trim(s.substr(0, eq)), split(s.substr(eq + 1), ',')};
        if (axis.key.rfind("--", 0) == 0) axis.key.erase(0, 2);
        if (axis.key == "sweep" || axis.key == "jobs" || axis.key == "out" || axis.key == "format" || axis.key == "config")
            throw ConfigError("--sweep cannot vary --" + axis.key);
        axes.push_back(std::move(axis));
    }
    return axes;
}

Json sweep_report(const std::vector<std::string>& args, const Options& base, int& code) {
    const auto axes = parse_sweeps(base.sweeps);
    // Cartesian product, first axis slowest.
    std::vector<std::vector<std::string>> points{{}};
    for (const auto& axis : axes) {
        std::vector<std::vector<std::string>> next;
        for (const auto& p : points)
            for (const auto& v : axis.values) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }

    std::vector<Options> configs;
    for (const auto& p : points) {
        std::vector<std::string> point_args = args;
        for (size_t k = 0; k < axes.size(); ++k) {
            point_args.push_back("--" + axes[k].key);
            point_args.push_back(p[k]);
        }
        configs.push_back(parse_options(point_args));
    }
    const auto outcomes = parallel_map(configs, [](const Options& o) { return execute(o); }, base.jobs);

    Json sweep = Json::array();
    for (const auto& axis : axes) sweep.push_back(Json{{"key", axis.key}, {"values", axis.values}});
    Json pts = Json::array();
    Json flat = Json::array();
    code = kOk;
    for (size_t i = 0; i < points.size(); ++i) {
        Json params = Json::object();
        for (size_t k = 0; k < axes.size(); ++k) params[axes[k].key] = points[i][k];
        code = std::max(code, outcomes[i].code);
        pts.push_back(Json{{"index", i}, {"params", params}, {"exit_code", outcomes[i].code},
                           {"report", outcomes[i].report}});
        const Json& rep = outcomes[i].report;
        if (rep.contains("table") && rep["table"].is_array()) {
            for (const auto& row : rep["table"]) {
                Json rec{{"point", i}};
                for (const auto& [k, v] : params.items()) rec[k] = v;
                for (const auto& [k, v] : row.items()) rec[k] = v;
                flat.push_back(std::move(rec));
            }
        } else {
            Json rec{{"point", i}};
            for (const auto& [k, v] : params.items()) rec[k] = v;
            rec["exit_code"] = outcomes[i].code;
            for (const auto& [k, v] : rep.items()) rec[k] = v;
            flat.push_back(std::move(rec));
        }
    }
    Json r;
    r["command"] = base.command;
    r["sweep"] = sweep;
    r["ok"] = code == kOk;
    if (base.format == "json") r["points"] = pts;
    else r["table"] = flat;
    return r;
}

void emit(const Json& report, const Options& o, std::ostream& out) {
    const std::string text = render(report, o.format);
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + o.out + "'");
    f << text;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<std::string> full = apply_config(args, kSubcommands);
        const Options o = parse_options(full);
        if (!o.sweeps.empty()) {
            int code = kOk;
            const Json report = sweep_report(full, o, code);
            emit(report, o, out);
            return code;
        }
        const Outcome result = execute(o);
        emit(result.report, o, out);
        if (result.code == kDomainError) err << "ladder: " << result.message << '\n';
        if (result.code == kToleranceViolation) err << "ladder: tolerance exceeded\n";
        return result.code;
    } catch (const HelpRequested& h) {
        out << h.text;
        return kOk;
    } catch (const ConfigError& e) {
        err << "ladder: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "ladder: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ladder::Error& e) {
        err << "ladder: " << error_name(e) << ": " << e.what() << '\n';
        return kDomainError;
    } catch (const std::domain_error& e) {
        err << "ladder: " << error_name(e) << ": " << e.what() << '\n';
        return kDomainError;
    }
}

} // namespace ladder::cli
