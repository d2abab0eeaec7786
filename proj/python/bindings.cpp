#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ladder/algebra.hpp"
#include "ladder/cli.hpp"
#include "ladder/errors.hpp"
#include "ladder/expm.hpp"
#include "ladder/factorization.hpp"
#include "ladder/gn.hpp"
#include "ladder/phase.hpp"
#include "ladder/rotations.hpp"
#include "ladder/special.hpp"
#include "ladder/triangles.hpp"

namespace py = pybind11;
using namespace ladder;

namespace {

Exponent make_exponent(py::object y, py::object a, py::object b, py::object c) {
    if (!y.is_none()) return U1Exponent{y.cast<double>()};
    return U2Exponent{a.cast<Complex>(), b.cast<Complex>(), c.cast<Complex>()};
}

py::dict evaluation(const GnEvaluation& e) {
    py::dict d;
    d["n"] = e.n;
    d["m"] = e.m;
    d["y"] = e.y;
    d["value"] = e.value;
    d["route"] = std::string(to_string(e.route));
    d["err_estimate"] = e.err_estimate;
    return d;
}

WeightRule rule_by_name(const std::string& name, const std::string& p) {
    if (name == "unit") return unit_rule();
    if (name == "tilde") return tilde_rule(parse_rational(p));
    if (name == "bar") return bar_rule(parse_rational(p));
    if (name == "gauss-tilde") return gauss_tilde_rule();
    if (name == "gauss-bar") return gauss_bar_rule();
    throw std::invalid_argument("unknown rule '" + name + "'");
}

} // namespace

PYBIND11_MODULE(_ladder, m) {
    m.doc() = "Generalized ladder algebras";

    auto base = py::register_exception<Error>(m, "LadderError", PyExc_RuntimeError);
    py::register_exception<NonUnitaryRegime>(m, "NonUnitaryRegime", base.ptr());
    py::register_exception<PoleError>(m, "PoleError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<OverflowError>(m, "OverflowError", base.ptr());
    py::register_exception<DivisionByZero>(m, "DivisionByZero", base.ptr());
    py::register_exception<SingularS>(m, "SingularS", base.ptr());
    py::register_exception<UnsupportedAlgebra>(m, "UnsupportedAlgebra", base.ptr());

    py::class_<AlgebraSpec>(m, "AlgebraSpec")
        .def_static("parametric", &AlgebraSpec::parametric, py::arg("alpha"), py::arg("beta"), py::arg("sigma"))
        .def_static("profile", [](const std::string& name) { return AlgebraSpec::profile(parse_profile(name)); },
                    py::arg("name"))
        .def_property_readonly("is_parametric", &AlgebraSpec::is_parametric)
        .def("lambda_sq", &AlgebraSpec::lambda_sq, py::arg("j"))
        .def("__repr__", &AlgebraSpec::describe);

    py::class_<IndexWindow>(m, "IndexWindow")
        .def_static("make", &IndexWindow::make, py::arg("j_min"), py::arg("j_max"), py::arg("core_lo"),
                    py::arg("core_hi"))
        .def_static("full", &IndexWindow::full, py::arg("j_min"), py::arg("j_max"))
        .def_property_readonly("j_min", &IndexWindow::j_min)
        .def_property_readonly("j_max", &IndexWindow::j_max)
        .def_property_readonly("core_lo", &IndexWindow::core_lo)
        .def_property_readonly("core_hi", &IndexWindow::core_hi);

    m.def("build_matrices", [](const AlgebraSpec& s, const IndexWindow& w) {
        const LadderMatrices lm = build_matrices(s, w);
        return py::make_tuple(lm.L, lm.R, lm.S);
    }, "(L, R, S) on the window", py::arg("spec"), py::arg("window"));
    m.def("commutator_residual", [](const AlgebraSpec& s, const IndexWindow& w) {
        return commutator_residual(build_matrices(s, w), s);
    }, py::arg("spec"), py::arg("window"));
    m.def("padded_window", [](const AlgebraSpec& s, long lo, long hi, long pad) {
        return padded_window(s, {lo, hi}, pad);
    }, py::arg("spec"), py::arg("core_lo"), py::arg("core_hi"), py::arg("pad"));

    m.def("default_padding", [](const AlgebraSpec& s, long lo, long hi, double scale) {
        return default_padding(s, {lo, hi}, scale);
    }, py::arg("spec"), py::arg("core_lo"), py::arg("core_hi"), py::arg("scale"));

    m.def("expm", [](const Matrix& a) {
        const ExpmResult r = expm(a);
        return py::make_tuple(r.matrix, r.remainder_bound);
    }, "(exp(a), remainder bound)", py::arg("a"));

    m.def("tau", py::overload_cast<double>(&tau), py::arg("x"));
    m.def("secq", py::overload_cast<double>(&secq), py::arg("x"));
    m.def("factorization_residual",
          [](const AlgebraSpec& s, const IndexWindow& w, const std::string& ordering, py::object y, py::object a,
             py::object b, py::object c) {
              return factorization_residual(s, w, make_exponent(y, a, b, c), parse_ordering(ordering));
          },
          "U1 when y is given, else U2 with (a, b, c)", py::arg("spec"), py::arg("window"),
          py::arg("ordering") = "normal", py::arg("y") = py::none(), py::arg("a") = Complex(0.0),
          py::arg("b") = Complex(0.0), py::arg("c") = Complex(0.0));

    m.def("gn_closed", [](const AlgebraSpec& s, long n, double y) { return evaluation(gn_closed(s, n, y)); });
    m.def("gn_series", [](const AlgebraSpec& s, long n, double y) { return evaluation(gn_series(s, n, y)); });
    m.def("gn_oracle", [](const AlgebraSpec& s, long n, double y) { return evaluation(gn_oracle(s, n, y)); });
    m.def("gn_evaluate", [](const AlgebraSpec& s, long n, double y) { return evaluation(gn_evaluate(s, n, y)); });
    m.def("gnm", [](const AlgebraSpec& s, long n, long k, double y) { return evaluation(gnm(s, n, k, y)); });
    m.def("recursion_residual", &recursion_residual, py::arg("spec"), py::arg("n"), py::arg("y"));

    m.def("triangle_nodes",
          [](const std::string& rule, const std::string& boundary, long start, long rows, const std::string& p) {
              const CoeffDiagram d = generate(rule_by_name(rule, p), parse_boundary(boundary), start, rows);
              std::vector<std::tuple<long, long, std::string, std::string>> out;
              for (const auto& nd : export_nodes(d)) out.emplace_back(nd.row, nd.column, nd.numerator, nd.denominator);
              return out;
          },
          "(row, column, numerator, denominator) of every occupied site", py::arg("rule"),
          py::arg("boundary") = "triangular", py::arg("start") = 0, py::arg("rows") = 8, py::arg("p") = "1");
    m.def("sumrule_check", [](const std::string& name, double y, long k_max) {
        return sumrule_check(parse_sumrule(name), y, k_max);
    }, py::arg("name"), py::arg("y"), py::arg("k_max") = 16);
    m.def("bessel_jn", &bessel_jn, py::arg("n"), py::arg("x"));

    m.def("rotation", [](double omega, double theta, double phi, double j, const std::string& method) {
        const RotationSpec r = make_rotation(omega, theta, phi, j);
        if (method == "factorized") return rotation_factorized(r);
        if (method == "direct") return rotation_direct(r);
        if (method == "antinormal") return antinormal_rotation(r);
        if (method == "u2") return rotation_via_u2(r);
        throw std::invalid_argument("unknown method '" + method + "'");
    }, py::arg("omega"), py::arg("theta"), py::arg("phi"), py::arg("j") = 1.0, py::arg("method") = "factorized");

    m.def("phase_element", &phase_element, py::arg("n"), py::arg("m"), py::arg("y"));
    m.def("phase_oracle", &phase_oracle, py::arg("n"), py::arg("m"), py::arg("y"), py::arg("size") = 60);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "(exit code, stdout, stderr) of one command line", py::arg("args"));
}
